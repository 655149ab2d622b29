use std::sync::{Arc, OnceLock};

use bsegal::bisset::{const_rows, const_rows_map, pushout_product, transpose};
use bsegal::category::{core, FinGroupoid};
use bsegal::corpus::{corpus, CorpusEntry};
use bsegal::division::left_division_arrow;
use bsegal::segal::{nerve, nerve_map};
use bsegal::sset::isomorphic;
use bsegal::*;
use proptest::prelude::*;

fn ordinal_map(max: usize) -> impl Strategy<Value = OrdinalMap> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort_unstable();
            OrdinalMap::new(n, v).unwrap()
        })
    })
}

/// Two composable maps `[k] -> [m] -> [n]`.
fn composable(max: usize) -> impl Strategy<Value = (OrdinalMap, OrdinalMap)> {
    (0..=max, 0..=max, 0..=max).prop_flat_map(|(k, m, n)| {
        let f = prop::collection::vec(0..=m, k + 1);
        let g = prop::collection::vec(0..=n, m + 1);
        (f, g).prop_map(move |(mut f, mut g)| {
            f.sort_unstable();
            g.sort_unstable();
            (OrdinalMap::new(m, f).unwrap(), OrdinalMap::new(n, g).unwrap())
        })
    })
}

/// Small simplicial sets truncated at 5.
fn catalog5() -> Vec<Arc<SSet>> {
    vec![
        standard_simplex(2, 5),
        make_shape(ShapeKind::Horn, 2, Some(1), 5).unwrap().realized,
        make_shape(ShapeKind::Boundary, 3, None, 5).unwrap().realized,
        igroupoid_nerve(1, 5),
        nerve(&FinCat::cyclic_group(2), 5).sset,
        nerve(&FinCat::ordinal(2), 5).sset,
    ]
}

/// Monomorphisms among the generating shapes, at truncation 3.
fn monos3() -> Vec<SMap> {
    let shape = |k, n, i| make_shape(k, n, i, 3).unwrap().inclusion.unwrap();
    vec![
        shape(ShapeKind::Boundary, 1, None),
        shape(ShapeKind::Boundary, 2, None),
        shape(ShapeKind::Horn, 2, Some(0)),
        shape(ShapeKind::Horn, 2, Some(1)),
        shape(ShapeKind::Spine, 2, None),
        shape(ShapeKind::Cone, 2, None),
    ]
}

fn targets3() -> Vec<Arc<SSet>> {
    vec![
        nerve(&FinCat::ordinal(1), 3).sset,
        nerve(&FinCat::cyclic_group(2), 3).sset,
        nerve(&FinCat::codiscrete(2), 3).sset,
        standard_simplex(0, 3),
    ]
}

fn shared_corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(corpus)
}

fn automorphisms(x: &Arc<SSet>) -> Vec<SMap> {
    enumerate_maps(x, x).unwrap().maps.into_iter().filter(SMap::is_iso).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_respects_composition((f, g) in composable(5), which in 0..6usize) {
        let x = &catalog5()[which];
        let gf = g.compose(&f).unwrap();
        for s in 0..x.count(g.codomain()) {
            prop_assert_eq!(x.act(&gf, s).unwrap(), x.act(&f, x.act(&g, s).unwrap()).unwrap());
        }
    }

    #[test]
    fn labelled_action_is_precomposition(f in ordinal_map(5), which in 0..4usize) {
        let x = &catalog5()[which];
        for s in 0..x.count(f.codomain()) {
            let label = x.label(f.codomain(), s).unwrap();
            let expect: Vec<usize> = f.values().iter().map(|&i| label[i]).collect();
            prop_assert_eq!(x.label(f.domain(), x.act(&f, s).unwrap()).unwrap(), &expect[..]);
        }
    }

    #[test]
    fn ez_factorization_unique(f in ordinal_map(5)) {
        let (m, n) = (f.domain(), f.codomain());
        let mut found = Vec::new();
        for k in 0..=m.min(n) {
            for e in OrdinalMap::all(m, k).into_iter().filter(OrdinalMap::is_surjective) {
                for i in OrdinalMap::all(k, n).into_iter().filter(OrdinalMap::is_injective) {
                    if i.compose(&e).unwrap() == f {
                        found.push((e.clone(), i));
                    }
                }
            }
        }
        prop_assert_eq!(found, vec![f.ez_factor()]);
    }

    #[test]
    fn yoneda(n in 0..=3usize, which in 0..4usize) {
        let x = &targets3()[which];
        let maps = enumerate_maps(&standard_simplex(n, 3), x).unwrap().maps;
        let top = standard_simplex(n, 3).find_label(&(0..=n).collect::<Vec<_>>()).unwrap();
        let mut images: Vec<usize> = maps.iter().map(|m| m.apply(n, top)).collect();
        images.sort_unstable();
        prop_assert_eq!(images, (0..x.count(n)).collect::<Vec<_>>());
    }

    #[test]
    fn pushout_symmetric(which in 0..6usize, leg in 0..64usize, t in 0..4usize) {
        let f = &monos3()[which];
        let maps = enumerate_maps(f.source(), &targets3()[t]).unwrap().maps;
        let g = &maps[leg % maps.len()];
        let fg = pushout(f, g).unwrap();
        let gf = pushout(g, f).unwrap();
        let swap = fg.induced(&gf.from_right, &gf.from_left).unwrap();
        prop_assert!(swap.is_iso());
        prop_assert!(isomorphic(&fg.object, &gf.object));
    }

    #[test]
    fn lifting_invariant_under_isomorphism(which in 0..6usize, t in 0..3usize, a in 0..8usize, b in 0..8usize) {
        let u = &monos3()[which];
        let x = targets3()[t].clone();
        let f = enumerate_maps(&x, &standard_simplex(0, 3)).unwrap().maps.remove(0);
        let (aa, ab) = (automorphisms(u.source()), automorphisms(u.target()));
        let v = ab[b % ab.len()].compose(&u.compose(&aa[a % aa.len()]).unwrap()).unwrap();
        let (r, s) = (lifting(u, &f).unwrap(), lifting(&v, &f).unwrap());
        prop_assert_eq!(r.holds, s.holds);
        let (mut p, mut q) = (r.lift_counts.clone(), s.lift_counts.clone());
        p.sort_unstable();
        q.sort_unstable();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn corpus_tables_are_categories(i in 0..3125usize) {
        let all = shared_corpus();
        let c = &all[i % all.len()].category;
        prop_assert!(c.validate().is_ok());
        let k = core(c);
        for f in 0..k.cat().arrow_count() {
            let inv = k.inverse(f);
            prop_assert_eq!(k.cat().compose(inv, f), Some(k.cat().identity(k.cat().dom(f))));
            prop_assert_eq!(k.cat().compose(f, inv), Some(k.cat().identity(k.cat().cod(f))));
        }
        prop_assert!(FinGroupoid::from_cat(k.cat().clone()).is_ok());
    }

    #[test]
    fn transpose_swaps_rows_and_columns(which in 0..4usize, n in 0..=3usize) {
        let x = const_rows(&targets3()[which]);
        let t = transpose(&x);
        prop_assert!(isomorphic(&t.column(n), &x.row(n)));
        prop_assert_eq!(t.counts()[n].clone(), (0..=3).map(|m| x.count(m, n)).collect::<Vec<_>>());
    }
}

/// `lifting(u □' v, f) <=> lifting(v, ⟨u\f⟩)` over monos `u, v` and maps of
/// discrete nerves `f`.
#[test]
fn division_adjunction_catalog() {
    let monos = [
        make_shape(ShapeKind::Boundary, 1, None, 2).unwrap().inclusion.unwrap(),
        make_shape(ShapeKind::Horn, 2, Some(0), 2).unwrap().inclusion.unwrap(),
        make_shape(ShapeKind::Spine, 2, None, 2).unwrap().inclusion.unwrap(),
    ];
    let arrow = nerve(&FinCat::ordinal(1), 2);
    let point = nerve(&FinCat::terminal(), 2);
    let z2 = nerve(&FinCat::cyclic_group(2), 2);
    let fs = [
        enumerate_maps(&arrow.sset, &point.sset).unwrap().maps.remove(0),
        enumerate_maps(&z2.sset, &point.sset).unwrap().maps.remove(0),
        nerve_map(&bsegal::category::enumerate_functors(&FinCat::terminal(), &FinCat::ordinal(1))[0], &point, &arrow),
    ];
    for f in &fs {
        let bf = const_rows_map(f);
        for u in &monos {
            let arrow_u = left_division_arrow(u, &bf).unwrap();
            for v in &monos {
                let box_uv = pushout_product(u, v).unwrap();
                let left = bsegal::bisset::bilifting(&box_uv, &bf).unwrap().holds;
                let right = lifting(v, &arrow_u).unwrap().holds;
                assert_eq!(left, right);
            }
        }
    }
}
