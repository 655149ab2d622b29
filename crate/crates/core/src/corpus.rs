//! The test corpus: every category on at most two objects with at most six
//! arrows (identities included), up to isomorphism, plus named examples; and
//! the property sweep run over it.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::{core, ArrowInfo, FinCat};
use crate::segal::{
    beta2, check_fraction_laws, cofree_core, complete_by_isos, core_bisimplicial, discrete_bousfield_levels,
    discrete_segal_levels, ho, ho_b, is_complete_discrete, is_const_cols_isomorphic,
    is_homotopically_constant_discrete, transposed_constancy, DiscreteSegalSpace, FractionTable,
};

pub const SWEEP_FORMAT: &str = "bsegal.sweep/1";

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub category: FinCat,
}

/// Object count and non-identity hom sizes `h[x][y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Skeleton {
    objects: usize,
    hom: Vec<Vec<usize>>,
}

impl Skeleton {
    /// Arrow endpoints: identities first, then non-identities by `(dom, cod)`.
    fn arrows(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<(usize, usize)> = (0..self.objects).map(|x| (x, x)).collect();
        for x in 0..self.objects {
            for y in 0..self.objects {
                a.extend(std::iter::repeat((x, y)).take(self.hom[x][y]));
            }
        }
        a
    }
}

fn skeletons(max_objects: usize, max_arrows: usize) -> Vec<Skeleton> {
    let mut out = Vec::new();
    for k in 0..=max_objects {
        if k > max_arrows {
            break;
        }
        let cells = k * k;
        let budget = max_arrows - k;
        let mut sizes = vec![0usize; cells];
        loop {
            if sizes.iter().sum::<usize>() <= budget {
                let hom = (0..k).map(|x| sizes[x * k..(x + 1) * k].to_vec()).collect();
                out.push(Skeleton { objects: k, hom });
            }
            // odometer over 0..=budget per cell
            let mut i = 0;
            while i < cells && sizes[i] == budget {
                sizes[i] = 0;
                i += 1;
            }
            if i == cells {
                break;
            }
            sizes[i] += 1;
        }
    }
    out
}

/// Composition table indexed `[g][f]`, `None` when not composable.
type Table = Vec<Vec<Option<usize>>>;

/// All associative, unital composition tables on a skeleton.
fn tables(sk: &Skeleton) -> Vec<Table> {
    let ends = sk.arrows();
    let n = ends.len();
    let k = sk.objects;
    let mut table: Table = vec![vec![None; n]; n];
    for (f, &(dom, cod)) in ends.iter().enumerate() {
        table[cod][f] = Some(f);
        table[f][dom] = Some(f);
    }
    let mut pairs = Vec::new();
    for g in k..n {
        for f in k..n {
            if ends[f].1 == ends[g].0 {
                pairs.push((g, f));
            }
        }
    }
    // growing square blocks, so small subtables close early
    pairs.sort_by_key(|&(g, f)| (g.max(f), g, f));
    let candidates: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(g, f)| (0..n).filter(|&h| ends[h] == (ends[f].0, ends[g].1)).collect())
        .collect();
    let mut out = Vec::new();
    fill(&ends, &pairs, &candidates, 0, &mut table, &mut out);
    out
}

/// Is associativity violated by some triple whose four composites are known
/// and which involves the pair `(g, f)`? Every triple is checked once its
/// last composite is assigned.
fn violates(ends: &[(usize, usize)], t: &Table, g: usize, f: usize) -> bool {
    let gf = t[g][f].expect("assigned");
    let n = ends.len();
    let differ = |a: Option<usize>, b: Option<usize>| matches!((a, b), (Some(a), Some(b)) if a != b);
    for x in 0..n {
        // (x g) f = x (g f)
        if ends[x].0 == ends[g].1 {
            if let Some(xg) = t[x][g] {
                if differ(t[xg][f], t[x][gf]) {
                    return true;
                }
            }
        }
        // (g f) x = g (f x)
        if ends[x].1 == ends[f].0 {
            if let Some(fx) = t[f][x] {
                if differ(t[gf][x], t[g][fx]) {
                    return true;
                }
            }
        }
        for y in 0..n {
            // g = x y: (x y) f = x (y f)
            if t[x][y] == Some(g) {
                if let Some(yf) = t[y][f] {
                    if differ(Some(gf), t[x][yf]) {
                        return true;
                    }
                }
            }
            // f = x y: g (x y) = (g x) y
            if t[x][y] == Some(f) {
                if let Some(gx) = t[g][x] {
                    if differ(Some(gf), t[gx][y]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn fill(
    ends: &[(usize, usize)],
    pairs: &[(usize, usize)],
    candidates: &[Vec<usize>],
    i: usize,
    table: &mut Table,
    out: &mut Vec<Table>,
) {
    if i == pairs.len() {
        debug_assert!(fully_associative(ends, table));
        out.push(table.clone());
        return;
    }
    let (g, f) = pairs[i];
    for &h in &candidates[i] {
        table[g][f] = Some(h);
        if !violates(ends, table, g, f) {
            fill(ends, pairs, candidates, i + 1, table, out);
        }
    }
    table[g][f] = None;
}

fn fully_associative(ends: &[(usize, usize)], t: &Table) -> bool {
    let n = ends.len();
    (0..n).all(|f| {
        (0..n).all(|g| {
            let Some(gf) = t[g][f] else { return true };
            (0..n).all(|h| match (t[h][g], t[h][gf]) {
                (Some(hg), Some(h_gf)) => t[hg][f] == Some(h_gf),
                _ => true,
            })
        })
    })
}

/// Isomorphism-invariant data of an arrow, used to restrict the relabellings
/// tried by [`canonical_form`].
fn invariant(ends: &[(usize, usize)], t: &Table, a: usize) -> Vec<usize> {
    let n = ends.len();
    let left_fix = (0..n).filter(|&b| t[b][a] == Some(a)).count();
    let right_fix = (0..n).filter(|&b| t[a][b] == Some(a)).count();
    let factorizations = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| t[x][y] == Some(a)).count();
    let mut v = vec![left_fix, right_fix, factorizations];
    if ends[a].0 == ends[a].1 {
        // index and period of the powers of a
        let mut seen = vec![a];
        let mut p = a;
        loop {
            p = t[p][a].expect("endomorphism");
            if let Some(i) = seen.iter().position(|&q| q == p) {
                v.extend([1 + i, seen.len() - i]);
                break;
            }
            seen.push(p);
        }
    }
    v
}

/// The lexicographically least table over all relabellings that permute
/// objects and permute arrows within invariant classes.
fn canonical_form(sk: &Skeleton, t: &Table) -> (Skeleton, Vec<usize>) {
    let ends = sk.arrows();
    let n = ends.len();
    let k = sk.objects;
    let inv: Vec<Vec<usize>> = (0..n).map(|a| invariant(&ends, t, a)).collect();
    let mut best: Option<(Skeleton, Vec<usize>)> = None;
    for objs in (0..k).permutations(k) {
        // objs[old] = new
        let new_sk = Skeleton {
            objects: k,
            hom: (0..k)
                .map(|x| (0..k).map(|y| sk.hom[objs.iter().position(|&o| o == x).unwrap()][objs.iter().position(|&o| o == y).unwrap()]).collect())
                .collect(),
        };
        if let Some((b, _)) = &best {
            if new_sk > *b {
                continue;
            }
        }
        // classes keyed by new endpoints and invariant, in target order
        let mut classes: BTreeMap<(usize, usize, bool, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for a in 0..n {
            let key = (objs[ends[a].0], objs[ends[a].1], a >= k, inv[a].clone());
            classes.entry(key).or_default().push(a);
        }
        // identities must come first in object order
        let mut order: Vec<Vec<usize>> = Vec::new();
        let ids: Vec<usize> = (0..k).map(|x| objs.iter().position(|&o| o == x).unwrap()).collect();
        order.push(ids);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut nonid: Vec<(&(usize, usize, bool, Vec<usize>), &Vec<usize>)> = classes.iter().filter(|(key, _)| key.2).collect();
        nonid.sort_by(|a, b| (a.0 .0, a.0 .1, &a.0 .3).cmp(&(b.0 .0, b.0 .1, &b.0 .3)));
        for (_, members) in nonid {
            blocks.push(members.clone());
        }
        let perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect()).collect();
        let product: Box<dyn Iterator<Item = Vec<Vec<usize>>>> =
            if perms.is_empty() { Box::new(std::iter::once(Vec::new())) } else { Box::new(perms.into_iter().multi_cartesian_product()) };
        for choice in product {
            // new position -> old arrow
            let old: Vec<usize> = order[0].iter().copied().chain(choice.into_iter().flatten()).collect();
            let mut pos = vec![0; n];
            for (p, &a) in old.iter().enumerate() {
                pos[a] = p;
            }
            let code: Vec<usize> = (0..n)
                .flat_map(|g| (0..n).map(move |f| (g, f)))
                .map(|(g, f)| t[old[g]][old[f]].map_or(usize::MAX, |h| pos[h]))
                .collect();
            let better = match &best {
                None => true,
                Some((b, c)) => (&new_sk, &code) < (b, c),
            };
            if better {
                best = Some((new_sk.clone(), code));
            }
        }
    }
    best.expect("at least one relabelling")
}

fn to_fincat(sk: &Skeleton, t: &Table) -> FinCat {
    let ends = sk.arrows();
    let k = sk.objects;
    let objects: Vec<String> = (0..k).map(|x| x.to_string()).collect();
    let arrows: Vec<ArrowInfo> = ends
        .iter()
        .enumerate()
        .map(|(a, &(dom, cod))| ArrowInfo { name: if a < k { format!("id{a}") } else { format!("f{}", a - k) }, dom, cod })
        .collect();
    let triples: Vec<(usize, usize, usize)> = (k..ends.len())
        .flat_map(|g| (k..ends.len()).map(move |f| (g, f)))
        .filter_map(|(g, f)| t[g][f].map(|h| (g, f, h)))
        .collect();
    FinCat::new(objects, arrows, (0..k).collect(), &triples).expect("generated tables are categories")
}

/// Every category with at most `max_objects` objects and `max_arrows`
/// arrows, one per isomorphism class, in a deterministic order.
pub fn small_categories(max_objects: usize, max_arrows: usize) -> Vec<FinCat> {
    let sks = skeletons(max_objects, max_arrows);
    let found: Vec<(Skeleton, Vec<usize>, Skeleton, Table)> = sks
        .par_iter()
        .flat_map_iter(|sk| {
            tables(sk).into_iter().map(move |t| {
                let (csk, code) = canonical_form(sk, &t);
                (csk, code, sk.clone(), t)
            })
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (csk, code, sk, t) in found {
        if seen.insert((csk.clone(), code.clone())) {
            out.push((csk, code, to_fincat(&sk, &t)));
        }
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out.into_iter().map(|(_, _, c)| c).collect()
}

/// Named examples: ordinals, cyclic groups, codiscrete and discrete
/// groupoids, and a few disjoint unions.
pub fn named_examples() -> Vec<CorpusEntry> {
    let mut v = Vec::new();
    let mut push = |name: String, c: FinCat| v.push(CorpusEntry { name, category: c });
    push("terminal".into(), FinCat::terminal());
    for n in 0..=3 {
        push(format!("ordinal-{n}"), FinCat::ordinal(n));
    }
    for k in 1..=4 {
        push(format!("cyclic-{k}"), FinCat::cyclic_group(k));
    }
    for k in 1..=3 {
        push(format!("codiscrete-{k}"), FinCat::codiscrete(k));
        push(format!("discrete-{k}"), FinCat::discrete(k));
    }
    let (o1, z2, z3, i2) = (FinCat::ordinal(1), FinCat::cyclic_group(2), FinCat::cyclic_group(3), FinCat::codiscrete(2));
    push("ordinal-1+cyclic-2".into(), FinCat::disjoint_union(&[("a", &o1), ("b", &z2)]));
    push("cyclic-2+cyclic-3".into(), FinCat::disjoint_union(&[("a", &z2), ("b", &z3)]));
    push("codiscrete-2+ordinal-0".into(), FinCat::disjoint_union(&[("a", &i2), ("b", &FinCat::ordinal(0))]));
    push("ordinal-1+codiscrete-2".into(), FinCat::disjoint_union(&[("a", &o1), ("b", &i2)]));
    v
}

/// The full corpus: generated categories followed by named examples.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut v: Vec<CorpusEntry> = small_categories(2, 6)
        .into_iter()
        .enumerate()
        .map(|(i, c)| CorpusEntry { name: format!("gen-{i}"), category: c })
        .collect();
    v.extend(named_examples());
    v
}

/// Pass/fail counts for one property over the corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub property: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub format: String,
    pub truncation: usize,
    pub categories: usize,
    pub groupoids: usize,
    pub properties: Vec<PropertyTally>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    pub fn tally(&self, property: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|p| p.property == property)
    }
}

/// Families of properties, each run independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// Bousfield, Segal, groupoid and core characterizations.
    Equivalences,
    /// Fraction laws, `Ho_B` and `Ho`.
    Fractions,
    /// Idempotence, maximality and the cartesian squares of `Core`.
    Core,
    /// Completeness and homotopical constancy.
    Completeness,
    /// The cofree core against `Core`.
    Cofree,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::Equivalences, Group::Fractions, Group::Core, Group::Completeness, Group::Cofree];

    pub fn properties(self) -> &'static [&'static str] {
        match self {
            Group::Equivalences => &[
                "beta2 <=> all beta_n",
                "beta2 <=> all arrows invertible",
                "beta2 <=> core(C) = C",
                "bousfield => segal",
                "segal",
            ],
            Group::Fractions => &["fraction laws", "Ho_B is a groupoid", "Ho = Ho_B", "Ho(N C) = C"],
            Group::Core => &["core idempotent", "core maximal", "core squares cartesian"],
            Group::Completeness => &[
                "completeness matches iso count",
                "complete and bousfield <=> homotopically constant",
                "homotopically constant <=> const_cols-isomorphic",
                "transposed constancy",
            ],
            Group::Cofree => &["beta2 <=> cofree core restriction bijective at n = 1", "cofree core = Core levelwise"],
        }
    }
}

/// `None` when the property does not apply to the category.
type Verdicts = Vec<Option<bool>>;

fn evaluate(e: &CorpusEntry, d: usize, group: Group, cofree_max: usize) -> Verdicts {
    let c = &e.category;
    let x = DiscreteSegalSpace::new(c.clone(), d);
    let b2 = || beta2(&x).expect("D >= 2").bijective;
    let bous = || discrete_bousfield_levels(&x).expect("D >= 2").iter().all(|&b| b);
    match group {
        Group::Equivalences => {
            let (b2, bous) = (b2(), bous());
            let seg = discrete_segal_levels(&x).expect("D >= 2").iter().all(|&b| b);
            let core_full = core(c).cat().arrow_count() == c.arrow_count();
            vec![Some(b2 == bous), Some(b2 == c.is_groupoid()), Some(b2 == core_full), Some(!bous || seg), Some(seg)]
        }
        Group::Fractions => {
            let b2 = b2();
            let fraction = b2.then(|| {
                FractionTable::new(&x).and_then(|t| check_fraction_laws(&t)).map(|r| r.holds()).unwrap_or(false)
            });
            let hob = ho_b(&x);
            let ho_x = ho(&x);
            vec![
                fraction,
                b2.then(|| hob.is_ok()),
                c.is_groupoid().then(|| matches!((&ho_x, &hob), (Ok(a), Ok(b)) if a == b.cat())),
                Some(matches!(&ho_x, Ok(a) if a == c)),
            ]
        }
        Group::Core => {
            let k = core(c);
            let idem = core(k.cat()).cat() == k.cat();
            let maximal = c.invertible_arrows().iter().all(|&f| k.cat().find_arrow(&c.arrow(f).name).is_some());
            let squares = core_bisimplicial(&x)
                .map(|cs| cs.matching_cartesian.iter().chain(&cs.segal_cartesian).all(|&(_, b)| b))
                .unwrap_or(false);
            vec![Some(idem), Some(maximal), Some(squares)]
        }
        Group::Completeness => {
            let complete = is_complete_discrete(&x).expect("enumeration");
            let hc = is_homotopically_constant_discrete(&x.realized);
            vec![
                Some(complete == complete_by_isos(c)),
                Some((complete && bous()) == hc),
                Some(hc == is_const_cols_isomorphic(&x.realized)),
                Some(hc == transposed_constancy(&x.realized)),
            ]
        }
        Group::Cofree => {
            let core_nerve = crate::segal::nerve(core(c).cat(), d);
            // is the restriction a bijection onto Core_n?
            let agrees = |n: usize| -> bool {
                let Ok(cf) = cofree_core(&x.realized, n) else { return false };
                let mut r = cf.restriction.clone();
                r.sort_unstable();
                r.dedup();
                r.len() == cf.restriction.len() && r.len() == core_nerve.sset.count(n)
            };
            let onto_x1 = agrees(1) && core_nerve.sset.count(1) == x.nerve.sset.count(1);
            let top = if c.is_groupoid() { cofree_max.min(d) } else { 1 };
            vec![Some(b2() == onto_x1), Some((0..=top).all(agrees))]
        }
    }
}

/// Runs the given property groups over the corpus at truncation `d` (at
/// least 2). The cofree-core comparison runs up to degree `cofree_max` for
/// groupoids and degree 1 otherwise.
pub fn sweep(entries: &[CorpusEntry], d: usize, groups: &[Group], cofree_max: usize) -> SweepReport {
    let mut properties = Vec::new();
    for &g in groups {
        let verdicts: Vec<Verdicts> = entries.par_iter().map(|e| evaluate(e, d, g, cofree_max)).collect();
        for (i, p) in g.properties().iter().enumerate() {
            let mut t = PropertyTally { property: (*p).into(), checked: 0, failures: 0, first_failure: None };
            for (e, v) in entries.iter().zip(&verdicts) {
                if let Some(ok) = v[i] {
                    t.checked += 1;
                    if !ok {
                        t.failures += 1;
                        t.first_failure.get_or_insert_with(|| e.name.clone());
                    }
                }
            }
            properties.push(t);
        }
    }
    SweepReport {
        format: SWEEP_FORMAT.into(),
        truncation: d,
        categories: entries.len(),
        groupoids: entries.iter().filter(|e| e.category.is_groupoid()).count(),
        properties,
    }
}
