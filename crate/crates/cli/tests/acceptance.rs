//! Acceptance criteria 1-13, run in sequence so that each runtime limit is
//! measured on its own. One line per criterion is printed.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use bsegal::bisset::{const_cols, const_rows, const_rows_map, bilifting, box_product, diagonal, pushout_product, transpose};
use bsegal::category::{enumerate_functors, FinGroupoid};
use bsegal::cellular::{self, CellularCertificate};
use bsegal::corpus::{self, CorpusEntry, Group, SweepReport};
use bsegal::division::{divide_left, left_division_arrow};
use bsegal::segal::{self, nerve, nerve_map, right_adjoint_check, DiscreteSegalSpace};
use bsegal::shapes::{all_sequences, generating_faces, igroupoid_cone2, igroupoid_spine2};
use bsegal::sset::isomorphic;
use bsegal::*;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// --- 1. simplicial identities and Eilenberg-Zilber -------------------------

const MAX_ORDINAL: usize = 5;

fn cosimplicial_identities() -> Result<usize, String> {
    let d = |n, i| OrdinalMap::coface(n, i).unwrap();
    let s = |n, j| OrdinalMap::codegeneracy(n, j).unwrap();
    let eq = |a: OrdinalMap, b: OrdinalMap, what: &str| -> Result<(), String> {
        ensure!(a == b, "{what}: {a} != {b}");
        Ok(())
    };
    let mut checked = 0;
    for n in 2..=MAX_ORDINAL {
        for j in 0..=n {
            for i in 0..j {
                eq(ok(d(n, j).compose(&d(n - 1, i)))?, ok(d(n, i).compose(&d(n - 1, j - 1)))?, "d^j d^i")?;
                checked += 1;
            }
        }
    }
    for n in 0..=MAX_ORDINAL - 2 {
        for j in 0..=n {
            for i in 0..=j {
                eq(ok(s(n, j).compose(&s(n + 1, i)))?, ok(s(n, i).compose(&s(n + 1, j + 1)))?, "s^j s^i")?;
                checked += 1;
            }
        }
    }
    // s^j d^i with d^i: [n-1] -> [n], s^j: [n] -> [n-1]
    for n in 1..=MAX_ORDINAL {
        for j in 0..n {
            for i in 0..=n {
                let lhs = ok(s(n - 1, j).compose(&d(n, i)))?;
                let rhs = if i < j {
                    ok(d(n - 1, i).compose(&s(n - 2, j - 1)))?
                } else if i == j || i == j + 1 {
                    OrdinalMap::identity(n - 1)
                } else {
                    ok(d(n - 1, i - 1).compose(&s(n - 2, j)))?
                };
                eq(lhs, rhs, "s^j d^i")?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn ez_factorizations() -> Result<usize, String> {
    let mut checked = 0;
    for m in 0..=MAX_ORDINAL {
        for n in 0..=MAX_ORDINAL {
            for f in OrdinalMap::all(m, n) {
                let mut found = Vec::new();
                for k in 0..=m.min(n) {
                    for e in OrdinalMap::all(m, k).into_iter().filter(OrdinalMap::is_surjective) {
                        for i in OrdinalMap::all(k, n).into_iter().filter(OrdinalMap::is_injective) {
                            if ok(i.compose(&e))? == f {
                                found.push((e.clone(), i));
                            }
                        }
                    }
                }
                ensure!(found == vec![f.ez_factor()], "{f}: factorizations {found:?}");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Each simplex is `s^* y` for exactly one surjection `s` and nondegenerate `y`.
fn ez_in_sset(x: &SSet) -> Result<(), String> {
    for n in 0..=x.truncation() {
        for s in 0..x.count(n) {
            let mut found = Vec::new();
            for k in 0..=n {
                for e in OrdinalMap::all(n, k).into_iter().filter(OrdinalMap::is_surjective) {
                    for y in x.nondegenerate(k) {
                        if ok(x.act(&e, y))? == s {
                            found.push((k, y, e.clone()));
                        }
                    }
                }
            }
            let ez = x.ez_normal_form(n, s);
            ensure!(found == vec![(ez.core_dim, ez.core, ez.epi.clone())], "simplex ({n}, {s}): {found:?}");
        }
    }
    Ok(())
}

fn criterion_1() -> Verdict {
    let ids = cosimplicial_identities()?;
    let ez = ez_factorizations()?;
    let d = MAX_ORDINAL;
    let catalog = [
        standard_simplex(3, d),
        ok(make_shape(ShapeKind::Boundary, 3, None, d))?.realized,
        ok(make_shape(ShapeKind::Horn, 2, Some(1), d))?.realized,
        ok(make_shape(ShapeKind::Spc, 3, None, d))?.realized,
        igroupoid_nerve(1, d),
        nerve(&FinCat::cyclic_group(2), d).sset,
        nerve(&FinCat::ordinal(2), d).sset,
    ];
    for x in &catalog {
        ok(x.check_identities())?;
        ez_in_sset(x)?;
    }
    Ok(format!("{ids} cosimplicial identities, {ez} maps factor uniquely, {} simplicial sets at D = {d}", catalog.len()))
}

// --- 2. conical nerve formulas -----------------------------------------------

fn criterion_2() -> Verdict {
    let d = 4;
    let mut compared = 0;
    for n in 0..=3 {
        // oracle: nerve of the codiscrete groupoid, faces by composing arrows
        let c = FinCat::codiscrete(n + 1);
        let nv = nerve(&c, d);
        let seq = |m: usize, k: usize| -> Vec<usize> {
            let t = &nv.simplices[m][k];
            if m == 0 {
                return t.clone();
            }
            std::iter::once(c.dom(t[0])).chain(t.iter().map(|&a| c.cod(a))).collect()
        };
        for m in 0..=d {
            for k in 0..nv.sset.count(m) {
                let s = ConicalSimplex(seq(m, k));
                for j in 0..=m {
                    if m > 0 {
                        ensure!(ok(conical_face(&s, j))?.0 == seq(m - 1, nv.sset.face(m, j, k)), "d_{j} of {s:?}");
                    }
                    if m < d {
                        ensure!(
                            ok(conical_degeneracy(&s, j))?.0 == seq(m + 1, nv.sset.degeneracy(m, j, k)),
                            "s_{j} of {s:?}"
                        );
                    }
                    compared += 1;
                }
            }
        }
        // the formulas satisfy the simplicial identities on every sequence
        for m in 2..=d {
            for s in all_sequences(n, m + 1).into_iter().map(ConicalSimplex) {
                for j in 1..=m {
                    for i in 0..j {
                        let a = ok(conical_face(&ok(conical_face(&s, j))?, i))?;
                        let b = ok(conical_face(&ok(conical_face(&s, i))?, j - 1))?;
                        ensure!(a == b, "d_i d_j on {s:?}");
                    }
                }
            }
        }
        if n <= 2 {
            ensure!(isomorphic(&igroupoid_nerve(n, d), &nv.sset), "IΔ^{n} vs codiscrete nerve");
        }
    }
    let i1 = igroupoid_nerve(1, 3);
    ensure!(i1.counts() == vec![2, 4, 8, 16], "IΔ¹ counts {:?}", i1.counts());
    ensure!(i1.nondegenerate_counts() == vec![2, 2, 2, 2], "IΔ¹ nondegenerate {:?}", i1.nondegenerate_counts());
    Ok(format!("{compared} face/degeneracy values agree with functor composition; IΔ¹ counts (2,4,8,16)/(2,2,2,2)"))
}

// --- 3-5. cellular certificates ----------------------------------------------

fn accepted(c: &CellularCertificate) -> Result<(), String> {
    let r = cellular::verify_certificate(c);
    ensure!(r.accepted, "rejected at step {:?}: {:?}", r.failing_step, r.reason);
    Ok(())
}

fn attachments(c: &CellularCertificate) -> usize {
    c.steps.iter().map(|s| s.attachments.len()).sum()
}

fn criterion_3() -> Verdict {
    let d = 4;
    let mut steps = 0;
    for n in 0..=3 {
        let c = ok(cellular::build_igroupoid_filtration(n, d))?;
        accepted(&c)?;
        ensure!(cellular::uses_only(&c, "h0^"), "n = {n}: non-horn generator");
        for g in &c.generators {
            let horn = ok(generating_faces(ShapeKind::Horn, g.dim, Some(0)))?;
            ensure!(g.domain_faces == horn, "{} is not the left horn inclusion", g.name);
        }
        let stages = ok(cellular::stages(&c))?;
        let last = stages.last().expect("source stage");
        ensure!(last.is_full(), "n = {n}: union misses simplices of IΔ^{n}");
        ensure!(last.counts() == igroupoid_nerve(n, d).counts(), "n = {n}: counts");
        ensure!(ok(cellular::filtration_stage_facts(&c))?.is_none(), "n = {n}: a stage misses a d₀-completeness fact");
        if n == 1 {
            ensure!(c.steps.iter().all(|s| s.attachments.len() == 1), "n = 1: T_(m+1) not a singleton");
        }
        steps += c.steps.len();
    }
    Ok(format!("n = 0..3 at D = {d}: {steps} left-horn steps accepted, union is IΔⁿ, singletons for n = 1"))
}

fn criterion_4() -> Verdict {
    for n in 2..=5 {
        let c = ok(cellular::cone_to_horn_chain(n, n))?;
        accepted(&c)?;
        ensure!(ok(cellular::horn_chain_commutes(&c))?, "n = {n}: h0 ∘ k != c");
    }
    Ok("n = 2..5 at D = n: chains accepted, h₀ⁿ ∘ kₙ = cₙ".into())
}

fn criterion_5() -> Verdict {
    let d = 3;
    for n in 2..=6 {
        let (sp, cn) = ok(cellular::spine_cone_factorization(n, d))?;
        accepted(&sp)?;
        accepted(&cn)?;
        ensure!(cellular::uses_only(&sp, "sp2") && attachments(&sp) == n - 1, "n = {n}: spine pushouts");
        ensure!(cellular::uses_only(&cn, "c2") && attachments(&cn) == n - 1, "n = {n}: cone pushouts");
        ensure!(ok(cellular::factorization_commutes(&sp, &cn))?, "n = {n}: diagram does not commute");
    }
    Ok(format!("n = 2..6 at D = {d}: n-1 pushouts of sp₂ and of c₂, diagram commutes"))
}

// --- 6. the rotation of IΔ² ---------------------------------------------------

fn criterion_6() -> Verdict {
    let d = 4;
    let a = idelta2_automorphism(d);
    ensure!(a.is_iso(), "not an isomorphism");
    let a3 = ok(ok(a.compose(&a))?.compose(&a))?;
    ensure!(a3.same_as(&SMap::identity(a.source().clone())), "a³ != id");
    let (_, incl) = igroupoid_spine2(d).realize();
    let image = ok(a.compose(&incl))?.image();
    ensure!(image.members() == igroupoid_cone2(d).members(), "a[I[Sp₂]] != I[C₂]");
    Ok(format!("D = {d}: a³ = id, a[I[Sp₂]] = I[C₂]"))
}

// --- 7-12. corpus sweeps and the named suites --------------------------------

/// Generated categories by (objects, arrows). One-object rows are the monoid
/// counts of OEIS A058129; two-object rows are cross-checked against a naive
/// enumeration up to five arrows in the corpus unit tests.
const GENERATED: [((usize, usize), usize); 12] = [
    ((0, 0), 1),
    ((1, 1), 1),
    ((1, 2), 2),
    ((1, 3), 7),
    ((1, 4), 35),
    ((1, 5), 228),
    ((1, 6), 2237),
    ((2, 2), 1),
    ((2, 3), 3),
    ((2, 4), 16),
    ((2, 5), 77),
    ((2, 6), 485),
];

fn sweep_group(entries: &[CorpusEntry], group: Group) -> Result<SweepReport, String> {
    let r = corpus::sweep(entries, 3, &[group], 3);
    if let Some(t) = r.properties.iter().find(|t| t.failures > 0) {
        return Err(format!("{}: {} failures, first {:?}", t.property, t.failures, t.first_failure));
    }
    ensure!(r.properties.iter().all(|t| t.checked > 0), "a property was never checked");
    Ok(r)
}

fn tallies(r: &SweepReport) -> String {
    r.properties.iter().map(|t| format!("{} [{}]", t.property, t.checked)).collect::<Vec<_>>().join(", ")
}

fn criterion_7(entries: &[CorpusEntry]) -> Verdict {
    let mut generated = std::collections::BTreeMap::new();
    for e in entries.iter().filter(|e| e.name.starts_with("gen-")) {
        *generated.entry((e.category.object_count(), e.category.arrow_count())).or_insert(0) += 1;
    }
    ensure!(generated.into_iter().eq(GENERATED), "generated categories per (objects, arrows) differ");
    let r = sweep_group(entries, Group::Equivalences)?;
    ensure!(r.properties.iter().all(|t| t.checked == entries.len()), "not every category was checked");
    Ok(format!("{} categories, 0 exceptions: {}", entries.len(), tallies(&r)))
}

fn criterion_8(entries: &[CorpusEntry]) -> Verdict {
    let r = sweep_group(entries, Group::Fractions)?;
    ensure!(r.tally("fraction laws").map(|t| t.checked) == Some(r.groupoids), "fraction laws not run on every groupoid");
    let text = std::fs::read_to_string(common::fixture("walking-arrow.json")).map_err(|e| e.to_string())?;
    let c = ok(FinCat::from_json(&ok(serde_json::from_str(&text))?))?;
    let b = ok(segal::beta2(&DiscreteSegalSpace::new(c, 3)))?;
    ensure!((b.source_size, b.target_size) == (4, 5), "walking arrow |X₂| = {} vs {}", b.source_size, b.target_size);
    ensure!(b.counterexample == Some(vec!["f".into(), "id0".into()]), "unhit pair {:?}", b.counterexample);
    Ok(format!("{}; walking arrow 4 vs 5, unhit (f, id0)", tallies(&r)))
}

fn criterion_9(entries: &[CorpusEntry]) -> Verdict {
    let r = sweep_group(entries, Group::Core)?;
    let g = |c: FinCat| FinGroupoid::from_cat(c).expect("groupoid");
    let monoid = entries.iter().find(|e| e.category.object_count() == 1 && !e.category.is_groupoid() && e.category.arrow_count() == 3);
    let monoid = monoid.expect("a three-element monoid").category.clone();
    let pairs = [
        (g(FinCat::terminal()), FinCat::ordinal(1)),
        (g(FinCat::terminal()), FinCat::ordinal(3)),
        (g(FinCat::cyclic_group(2)), FinCat::cyclic_group(4)),
        (g(FinCat::cyclic_group(2)), monoid.clone()),
        (g(FinCat::cyclic_group(3)), FinCat::cyclic_group(3)),
        (g(FinCat::codiscrete(2)), FinCat::ordinal(2)),
        (g(FinCat::codiscrete(2)), FinCat::codiscrete(3)),
        (g(FinCat::discrete(2)), FinCat::disjoint_union(&[("a", &FinCat::ordinal(1)), ("b", &FinCat::cyclic_group(2))])),
        (g(FinCat::discrete(2)), monoid),
        (
            g(FinCat::disjoint_union(&[("a", &FinCat::codiscrete(2)), ("b", &FinCat::cyclic_group(2))])),
            FinCat::disjoint_union(&[("a", &FinCat::ordinal(1)), ("b", &FinCat::codiscrete(2))]),
        ),
    ];
    for (i, (b, c)) in pairs.iter().enumerate() {
        let rep = right_adjoint_check(b, c);
        ensure!(rep.bijection && rep.into_core == rep.into_category, "pair {i}: {rep:?}");
    }
    Ok(format!("{}; right adjoint bijective on {} pairs", tallies(&r), pairs.len()))
}

fn criterion_10() -> Verdict {
    let mut verdicts = [0usize; 2];
    let mut pairs = 0;
    for d in 2..=3 {
        let shape = |k, n, i| make_shape(k, n, i, d).unwrap().inclusion.unwrap();
        let monos = [
            shape(ShapeKind::Boundary, 1, None),
            shape(ShapeKind::Boundary, 2, None),
            shape(ShapeKind::Horn, 2, Some(0)),
            shape(ShapeKind::Horn, 2, Some(1)),
            shape(ShapeKind::Horn, 2, Some(2)),
            shape(ShapeKind::Spine, 2, None),
            shape(ShapeKind::Cone, 2, None),
        ];
        let (arrow, point, z2) =
            (nerve(&FinCat::ordinal(1), d), nerve(&FinCat::terminal(), d), nerve(&FinCat::cyclic_group(2), d));
        let to_point = |x: &Arc<SSet>| ok(enumerate_maps(x, &point.sset)).map(|e| e.maps[0].clone());
        let vertex = nerve_map(&enumerate_functors(&FinCat::terminal(), &FinCat::ordinal(1))[0], &point, &arrow);
        let fs = [to_point(&arrow.sset)?, to_point(&z2.sset)?, vertex];
        for f in fs.iter().map(const_rows_map) {
            for u in &monos {
                let du = ok(left_division_arrow(u, &f))?;
                for v in &monos {
                    let lhs = ok(bilifting(&ok(pushout_product(u, v))?, &f))?.holds;
                    let rhs = ok(lifting(v, &du))?.holds;
                    ensure!(lhs == rhs, "D = {d}: lifting of u □ v and of v against ⟨u\\f⟩ disagree");
                    verdicts[lhs as usize] += 1;
                    pairs += 1;
                }
            }
        }
        for x in [
            Arc::new(ok(box_product(&standard_simplex(1, d), &igroupoid_nerve(1, d)))?),
            Arc::new(const_rows(&z2.sset)),
            Arc::new(transpose(&const_rows(&arrow.sset))),
        ] {
            for n in 0..=d {
                let dv = ok(divide_left(&standard_simplex(n, d), &x))?;
                ensure!(isomorphic(&dv.object, &x.column(n)), "D = {d}: Δ^{n}\\X is not column {n}");
            }
        }
    }
    ensure!(verdicts[0] > 0 && verdicts[1] > 0, "catalog is one-sided: {verdicts:?}");
    Ok(format!("{pairs} (u, v, f) triples at D = 2, 3 ({} lift, {} do not); Δⁿ\\X ≅ Xₙ for n <= D", verdicts[1], verdicts[0]))
}

fn criterion_11(entries: &[CorpusEntry]) -> Verdict {
    // homotopical constancy is read, as in the paper, on the maps between
    // columns; the matching constant diagram is const_cols of column 0
    let r = sweep_group(entries, Group::Completeness)?;
    let catalog = [
        standard_simplex(2, 3),
        igroupoid_nerve(1, 3),
        nerve(&FinCat::cyclic_group(3), 3).sset,
        ok(make_shape(ShapeKind::Spc, 3, None, 3))?.realized,
    ];
    for a in &catalog {
        ensure!(isomorphic(&diagonal(&const_rows(a)), a), "diagonal of const_rows");
        ensure!(isomorphic(&diagonal(&const_cols(a)), a), "diagonal of const_cols");
        let x = ok(box_product(a, &standard_simplex(1, 3)))?;
        ensure!(transpose(&transpose(&x)) == x, "σ*σ* != id");
        ensure!(transpose(&const_rows(a)) == const_cols(a), "σ* p₁* != p₂*");
        for n in 0..=3 {
            ensure!(transpose(&x).column(n) == x.row(n), "column {n} of σ*X != row {n} of X");
        }
    }
    Ok(format!("{}; σ* and diagonal identities on {} sets", tallies(&r), catalog.len()))
}

fn criterion_12(entries: &[CorpusEntry]) -> Verdict {
    let r = sweep_group(entries, Group::Cofree)?;
    for c in [FinCat::codiscrete(3), FinCat::cyclic_group(4), FinCat::disjoint_union(&[("a", &FinCat::cyclic_group(2)), ("b", &FinCat::codiscrete(2))])] {
        let x = DiscreteSegalSpace::new(c.clone(), 3);
        let core_nerve = nerve(core(&c).cat(), 3);
        for n in 0..=3 {
            let cf = ok(segal::cofree_core(&x.realized, n))?;
            let mut hit = cf.restriction.clone();
            hit.sort_unstable();
            ensure!(hit == (0..core_nerve.sset.count(n)).collect::<Vec<_>>(), "restriction not bijective at n = {n}");
        }
    }
    Ok(format!("{}; groupoids checked for n <= 3", tallies(&r)))
}

fn criterion_13() -> Verdict {
    let s = common::Scratch::new();
    let cases = common::golden_cases(&s);
    for g in &cases {
        common::check_golden(g)?;
    }
    let mutations = common::mutation_checks(&s);
    for (name, r) in &mutations {
        r.clone().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} golden outputs byte-identical, {} mutations flip status", cases.len(), mutations.len()))
}

struct Criterion {
    id: usize,
    limit: Duration,
    check: Box<dyn Fn() -> Verdict>,
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let t = Instant::now();
    let entries: Arc<Vec<CorpusEntry>> = Arc::new(corpus::corpus());
    // corpus generation is charged to every criterion that uses it
    let generation = t.elapsed();
    let with = |f: fn(&[CorpusEntry]) -> Verdict| {
        let e = entries.clone();
        Box::new(move || f(&e)) as Box<dyn Fn() -> Verdict>
    };
    let criteria = vec![
        Criterion { id: 1, limit: secs(10), check: Box::new(criterion_1) },
        Criterion { id: 2, limit: secs(10), check: Box::new(criterion_2) },
        Criterion { id: 3, limit: secs(30), check: Box::new(criterion_3) },
        Criterion { id: 4, limit: secs(30), check: Box::new(criterion_4) },
        Criterion { id: 5, limit: secs(30), check: Box::new(criterion_5) },
        Criterion { id: 6, limit: secs(5), check: Box::new(criterion_6) },
        Criterion { id: 7, limit: secs(300), check: with(criterion_7) },
        Criterion { id: 8, limit: secs(60), check: with(criterion_8) },
        Criterion { id: 9, limit: secs(60), check: with(criterion_9) },
        Criterion { id: 10, limit: secs(120), check: Box::new(criterion_10) },
        Criterion { id: 11, limit: secs(60), check: with(criterion_11) },
        Criterion { id: 12, limit: secs(120), check: with(criterion_12) },
        Criterion { id: 13, limit: secs(30), check: Box::new(criterion_13) },
    ];
    let uses_corpus = [7, 8, 9, 11, 12];
    let mut failed = Vec::new();
    for c in &criteria {
        let t = Instant::now();
        let verdict = (c.check)();
        let mut elapsed = t.elapsed();
        if uses_corpus.contains(&c.id) {
            elapsed += generation;
        }
        let verdict = verdict.and_then(|msg| {
            if elapsed > c.limit {
                Err(format!("over the time limit ({msg})"))
            } else {
                Ok(msg)
            }
        });
        let (status, msg) = match &verdict {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        // written past the test harness capture so the lines always show
        let line = format!("criterion {:>2}: {status} {:>7.2}s / {:>3}s  {msg}\n", c.id, elapsed.as_secs_f64(), c.limit.as_secs());
        let _ = std::io::Write::write_all(&mut std::io::stdout(), line.as_bytes());
        if verdict.is_err() {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
