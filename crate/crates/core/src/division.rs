//! Left and right divisions of bisimplicial sets by simplicial sets, computed
//! by enumerating maps out of box products.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bisset::{box_product, enumerate_bimaps, transpose, transpose_map, BiMap, BiSSet};
use crate::error::{Error, Result};
use crate::maps::trust_dimension;
use crate::ordinal::OrdinalMap;
use crate::presheaf::{Components, Layout, Presheaf};
use crate::shapes::standard_simplex;
use crate::sset::{pullback, SMap, SSet};

/// `A\X`, with its `m`-simplices the maps `A □ Δᵐ -> X` in enumeration
/// order.
#[derive(Clone, Debug)]
pub struct Division {
    pub object: Arc<SSet>,
    /// `elements[m][k]` is the map represented by the `k`-th `m`-simplex.
    pub elements: Vec<Vec<BiMap>>,
    pub trust_dimension: usize,
}

impl Division {
    fn index_of(&self, m: usize, comps: &Components) -> usize {
        self.elements[m]
            .iter()
            .position(|e| e.components() == comps)
            .expect("element of the division")
    }
}

struct SimplexIndex {
    simplex: Arc<SSet>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplexIndex {
    fn new(m: usize, d: usize) -> Self {
        let simplex = standard_simplex(m, d);
        let index = simplex
            .labels()
            .expect("labelled simplex")
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplexIndex { simplex, index }
    }

    fn count(&self, j: usize) -> usize {
        self.simplex.count(j)
    }

    fn label(&self, j: usize, q: usize) -> &[usize] {
        self.simplex.label(j, q).expect("labelled simplex")
    }

    fn find(&self, seq: &[usize]) -> usize {
        self.index[seq.len() - 1][seq]
    }
}

/// Precomposition of `phi: A □ Δᵐ -> X` with `id □ θ` for `θ: [k] -> [m]`.
fn precompose_vertical(
    layout: Layout,
    a: &SSet,
    phi: &Components,
    from: &SimplexIndex,
    to: &SimplexIndex,
    theta: &OrdinalMap,
) -> Components {
    (0..layout.grade_count())
        .map(|g| {
            let (n, j) = layout.bigrade(g);
            let (ck, cm) = (from.count(j), to.count(j));
            (0..a.count(n) * ck)
                .map(|x| {
                    let (p, q) = (x / ck, x % ck);
                    let image: Vec<usize> = from.label(j, q).iter().map(|&v| theta.apply(v)).collect();
                    phi[g][p * cm + to.find(&image)]
                })
                .collect()
        })
        .collect()
}

/// `A\X`: `(A\X)_m` is the set of maps `A □ Δᵐ -> X`, with vertical
/// operators acting by precomposition.
pub fn divide_left(a: &Arc<SSet>, x: &Arc<BiSSet>) -> Result<Division> {
    let d = x.truncation();
    if a.truncation() != d {
        return Err(Error::TruncationMismatch { left: a.truncation(), right: d });
    }
    let simplices: Vec<SimplexIndex> = (0..=d).map(|m| SimplexIndex::new(m, d)).collect();
    let mut elements = Vec::with_capacity(d + 1);
    for s in &simplices {
        let src = Arc::new(box_product(a, &s.simplex)?);
        elements.push(enumerate_bimaps(&src, x)?);
    }
    let keys: Vec<Vec<usize>> = elements.iter().map(|es| (0..es.len()).collect()).collect();
    let lookup: Vec<HashMap<&Components, usize>> = elements
        .iter()
        .map(|es| es.iter().enumerate().map(|(i, e)| (e.components(), i)).collect())
        .collect();
    let layout = Layout::Bisimplicial(d);
    let act = |m: usize, k: usize, theta: OrdinalMap, e: usize| -> usize {
        let c = precompose_vertical(layout, a, elements[m][e].components(), &simplices[k], &simplices[m], &theta);
        lookup[k][&c]
    };
    let p = Presheaf::from_keys(
        Layout::Simplicial(d),
        keys,
        |m, i, &e| act(m, m - 1, OrdinalMap::coface(m, i).expect("coface"), e),
        |m, j, &e| act(m, m + 1, OrdinalMap::codegeneracy(m, j).expect("codegeneracy"), e),
    )?;
    Ok(Division { object: Arc::new(SSet::wrap(p, None)), elements, trust_dimension: trust_dimension(a) })
}

/// `X/B := B\σ*X`, so that `(X/B)_n` is the set of maps `Δⁿ □ B -> X`.
pub fn divide_right(x: &Arc<BiSSet>, b: &Arc<SSet>) -> Result<Division> {
    divide_left(b, &Arc::new(transpose(x)))
}

/// Restriction `u*: B\X -> A\X` along `u: A -> B`.
pub fn restrict_division(u: &SMap, bx: &Division, ax: &Division) -> Result<SMap> {
    let d = bx.object.truncation();
    let layout = Layout::Bisimplicial(d);
    let comps = (0..=d)
        .map(|m| {
            let sm = standard_simplex(m, d);
            bx.elements[m]
                .iter()
                .map(|psi| {
                    let c: Components = (0..layout.grade_count())
                        .map(|g| {
                            let (n, j) = layout.bigrade(g);
                            let cj = sm.count(j);
                            (0..u.source().count(n) * cj)
                                .map(|x| psi.components()[g][u.apply(n, x / cj) * cj + x % cj])
                                .collect()
                        })
                        .collect();
                    ax.index_of(m, &c)
                })
                .collect()
        })
        .collect();
    SMap::new(bx.object.clone(), ax.object.clone(), comps)
}

/// Postcomposition `f_*: A\X -> A\Y`.
pub fn push_division(f: &BiMap, ax: &Division, ay: &Division) -> Result<SMap> {
    let d = ax.object.truncation();
    let comps = (0..=d)
        .map(|m| {
            ax.elements[m]
                .iter()
                .map(|phi| Ok(ay.index_of(m, f.compose(phi)?.components())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SMap::new(ax.object.clone(), ay.object.clone(), comps)
}

/// `⟨u\f⟩: B\X -> (A\X) ×_{A\Y} (B\Y)`, induced by restriction along the
/// monomorphism `u: A -> B` and postcomposition with `f: X -> Y`.
pub fn left_division_arrow(u: &SMap, f: &BiMap) -> Result<SMap> {
    if !u.is_mono() {
        return Err(Error::NotMono("left division arrow needs a monomorphism".into()));
    }
    let (a, b) = (u.source(), u.target());
    let (x, y) = (f.source(), f.target());
    let ax = divide_left(a, x)?;
    let bx = divide_left(b, x)?;
    let ay = divide_left(a, y)?;
    let by = divide_left(b, y)?;
    let u_x = restrict_division(u, &bx, &ax)?;
    let u_y = restrict_division(u, &by, &ay)?;
    let f_a = push_division(f, &ax, &ay)?;
    let f_b = push_division(f, &bx, &by)?;
    let (pb, p1, p2) = pullback(&f_a, &u_y)?;
    let d = bx.object.truncation();
    let comps = (0..=d)
        .map(|m| {
            (0..bx.object.count(m))
                .map(|e| {
                    let (l, r) = (u_x.apply(m, e), f_b.apply(m, e));
                    (0..pb.count(m))
                        .find(|&k| p1.apply(m, k) == l && p2.apply(m, k) == r)
                        .expect("pullback pair")
                })
                .collect()
        })
        .collect();
    SMap::new(bx.object.clone(), pb, comps)
}

/// `⟨f/v⟩ := ⟨v\σ*f⟩`.
pub fn right_division_arrow(v: &SMap, f: &BiMap) -> Result<SMap> {
    left_division_arrow(v, &transpose_map(f))
}
