//! Truncated bisimplicial sets, the box product, pushout-products and the
//! reindexing functors (constant rows/columns, row/column projections,
//! transpose, diagonal).
//!
//! Conventions: the first index `n` is horizontal and the second `m`
//! vertical. The `n`-th column `X_{n•}` is a simplicial set in `m`; the
//! `m`-th row `X_{•m}` is a simplicial set in `n`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::{lifting_raw, Arrow, LiftingReport};
use crate::presheaf::{self, Axis, Components, Layout, Presheaf};
use crate::sset::{SMap, SSet};

#[derive(Clone, PartialEq, Eq)]
pub struct BiSSet {
    pub(crate) inner: Presheaf,
}

impl fmt::Debug for BiSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiSSet").field("truncation", &self.truncation()).field("counts", &self.counts()).finish()
    }
}

impl BiSSet {
    pub(crate) fn wrap(inner: Presheaf) -> Self {
        debug_assert!(matches!(inner.layout, Layout::Bisimplicial(_)));
        BiSSet { inner }
    }

    fn layout(&self) -> Layout {
        self.inner.layout
    }

    /// Builds a bisimplicial set from explicit tables indexed `[n][m]`:
    /// horizontal faces `hfaces[n][m][i][x]` (for `n >= 1`), vertical faces
    /// `vfaces[n][m][j][x]` (for `m >= 1`) and likewise for degeneracies (for
    /// `n < D`, resp. `m < D`). Identities and commutation are checked.
    pub fn from_tables(
        truncation: usize,
        counts: Vec<Vec<usize>>,
        hfaces: Vec<Vec<Vec<Vec<usize>>>>,
        vfaces: Vec<Vec<Vec<Vec<usize>>>>,
        hdegens: Vec<Vec<Vec<Vec<usize>>>>,
        vdegens: Vec<Vec<Vec<Vec<usize>>>>,
    ) -> Result<Self> {
        let d = truncation;
        let dims_ok = |t: &Vec<Vec<Vec<Vec<usize>>>>| t.len() == d + 1 && t.iter().all(|r| r.len() == d + 1);
        if counts.len() != d + 1
            || counts.iter().any(|r| r.len() != d + 1)
            || ![&hfaces, &vfaces, &hdegens, &vdegens].into_iter().all(dims_ok)
        {
            return Err(Error::Validation(format!("bisimplicial tables must be ({0}+1)x({0}+1)", d)));
        }
        let layout = Layout::Bisimplicial(d);
        let gc = layout.grade_count();
        let mut faces = Vec::with_capacity(gc);
        let mut degens = Vec::with_capacity(gc);
        let mut sizes = Vec::with_capacity(gc);
        for g in 0..gc {
            let (n, m) = layout.bigrade(g);
            sizes.push(counts[n][m]);
            let mut f = hfaces[n][m].clone();
            f.extend(vfaces[n][m].iter().cloned());
            faces.push(f);
            let mut s = hdegens[n][m].clone();
            s.extend(vdegens[n][m].iter().cloned());
            degens.push(s);
        }
        Ok(Self::wrap(Presheaf::from_tables(layout, sizes, faces, degens)?))
    }

    pub fn terminal(truncation: usize) -> Self {
        Self::wrap(Presheaf::terminal(Layout::Bisimplicial(truncation)))
    }

    pub fn empty(truncation: usize) -> Self {
        Self::wrap(Presheaf::empty(Layout::Bisimplicial(truncation)))
    }

    pub fn truncation(&self) -> usize {
        self.layout().truncation()
    }

    pub fn count(&self, n: usize, m: usize) -> usize {
        self.inner.sizes[self.layout().grade(n, m)]
    }

    pub fn counts(&self) -> Vec<Vec<usize>> {
        let d = self.truncation();
        (0..=d).map(|n| (0..=d).map(|m| self.count(n, m)).collect()).collect()
    }

    pub fn hface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        let g = self.layout().grade(n, m);
        self.inner.faces[g][self.layout().face_op(g, Axis::Horizontal, i)][x]
    }

    pub fn vface(&self, n: usize, m: usize, i: usize, x: usize) -> usize {
        let g = self.layout().grade(n, m);
        self.inner.faces[g][self.layout().face_op(g, Axis::Vertical, i)][x]
    }

    pub fn hdegeneracy(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        let g = self.layout().grade(n, m);
        self.inner.degens[g][self.layout().degen_op(g, Axis::Horizontal, j)][x]
    }

    pub fn vdegeneracy(&self, n: usize, m: usize, j: usize, x: usize) -> usize {
        let g = self.layout().grade(n, m);
        self.inner.degens[g][self.layout().degen_op(g, Axis::Vertical, j)][x]
    }

    fn op(&self, n: usize, m: usize, axis: Axis, face: bool, i: usize, x: usize) -> usize {
        match (axis, face) {
            (Axis::Horizontal, true) => self.hface(n, m, i, x),
            (Axis::Horizontal, false) => self.hdegeneracy(n, m, i, x),
            (Axis::Vertical, true) => self.vface(n, m, i, x),
            (Axis::Vertical, false) => self.vdegeneracy(n, m, i, x),
        }
    }

    pub fn check_identities(&self) -> Result<()> {
        self.inner.check_identities()
    }

    pub fn is_bi_nondegenerate(&self, n: usize, m: usize, x: usize) -> bool {
        self.inner.is_nondegenerate(self.layout().grade(n, m), x)
    }

    /// The `n`-th column `X_{n•}`, a simplicial set in the vertical index.
    pub fn column(&self, n: usize) -> SSet {
        let d = self.truncation();
        let l = Layout::Simplicial(d);
        let (s, f, g) = l.build_tables(|m, _| self.count(n, m), |m, _, _, face, i, x| self.op(n, m, Axis::Vertical, face, i, x));
        SSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("column"), None)
    }

    /// The `m`-th row `X_{•m}`, a simplicial set in the horizontal index.
    pub fn row(&self, m: usize) -> SSet {
        let d = self.truncation();
        let l = Layout::Simplicial(d);
        let (s, f, g) = l.build_tables(|n, _| self.count(n, m), |n, _, _, face, i, x| self.op(n, m, Axis::Horizontal, face, i, x));
        SSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("row"), None)
    }
}

/// A map of bisimplicial sets.
#[derive(Clone, PartialEq, Eq)]
pub struct BiMap {
    source: Arc<BiSSet>,
    target: Arc<BiSSet>,
    components: Components,
}

impl fmt::Debug for BiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiMap")
            .field("source", &self.source.counts())
            .field("target", &self.target.counts())
            .finish()
    }
}

impl BiMap {
    pub fn new(source: Arc<BiSSet>, target: Arc<BiSSet>, components: Vec<Vec<usize>>) -> Result<Self> {
        source.inner.check_natural(&target.inner, &components)?;
        Ok(BiMap { source, target, components })
    }

    pub(crate) fn new_unchecked(source: Arc<BiSSet>, target: Arc<BiSSet>, components: Components) -> Self {
        debug_assert!(source.inner.check_natural(&target.inner, &components).is_ok());
        BiMap { source, target, components }
    }

    pub fn identity(x: Arc<BiSSet>) -> Self {
        let c = x.inner.identity_map();
        BiMap { source: x.clone(), target: x, components: c }
    }

    pub fn source(&self) -> &Arc<BiSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BiSSet> {
        &self.target
    }

    /// Components flattened by grade `n * (D + 1) + m`.
    pub fn components(&self) -> &Vec<Vec<usize>> {
        &self.components
    }

    pub fn apply(&self, n: usize, m: usize, x: usize) -> usize {
        self.components[self.source.layout().grade(n, m)][x]
    }

    pub fn compose(&self, inner: &BiMap) -> Result<BiMap> {
        if inner.target.inner != self.source.inner {
            return Err(Error::Validation("maps are not composable".into()));
        }
        Ok(BiMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components: presheaf::compose(&self.components, &inner.components),
        })
    }

    pub fn is_mono(&self) -> bool {
        presheaf::is_injective(&self.components, &self.target.inner.sizes)
    }

    pub fn is_iso(&self) -> bool {
        presheaf::is_bijective(&self.components, &self.target.inner.sizes)
    }

    /// The `m`-th row of the map.
    pub fn row(&self, m: usize) -> SMap {
        let d = self.source.truncation();
        let comps = (0..=d).map(|n| self.components[self.source.layout().grade(n, m)].clone()).collect();
        SMap::new_unchecked(Arc::new(self.source.row(m)), Arc::new(self.target.row(m)), comps)
    }

    /// The `n`-th column of the map.
    pub fn column(&self, n: usize) -> SMap {
        let d = self.source.truncation();
        let comps = (0..=d).map(|m| self.components[self.source.layout().grade(n, m)].clone()).collect();
        SMap::new_unchecked(Arc::new(self.source.column(n)), Arc::new(self.target.column(n)), comps)
    }
}

/// Every map `S -> X`, lexicographically.
pub fn enumerate_bimaps(s: &Arc<BiSSet>, x: &Arc<BiSSet>) -> Result<Vec<BiMap>> {
    Ok(s.inner
        .enumerate_maps(&x.inner, &|_, _| None, None)?
        .into_iter()
        .map(|c| BiMap::new_unchecked(s.clone(), x.clone(), c))
        .collect())
}

/// Lifting check of `u` against `f` in bisimplicial sets.
pub fn bilifting(u: &BiMap, f: &BiMap) -> Result<LiftingReport> {
    lifting_raw(
        Arrow { source: &u.source.inner, target: &u.target.inner, components: &u.components },
        Arrow { source: &f.source.inner, target: &f.target.inner, components: &f.components },
    )
}

fn check_same_truncation(a: &SSet, b: &SSet) -> Result<usize> {
    if a.truncation() != b.truncation() {
        return Err(Error::TruncationMismatch { left: a.truncation(), right: b.truncation() });
    }
    Ok(a.truncation())
}

/// `(A □ B)_{n,m} = A_n × B_m`, pair `(a, b)` stored at `a * |B_m| + b`.
pub fn box_product(a: &SSet, b: &SSet) -> Result<BiSSet> {
    let d = check_same_truncation(a, b)?;
    let l = Layout::Bisimplicial(d);
    let (s, f, g) = l.build_tables(
        |n, m| a.count(n) * b.count(m),
        |n, m, axis, face, i, x| {
            let (p, q) = (x / b.count(m), x % b.count(m));
            match (axis, face) {
                (Axis::Horizontal, true) => a.face(n, i, p) * b.count(m) + q,
                (Axis::Horizontal, false) => a.degeneracy(n, i, p) * b.count(m) + q,
                (Axis::Vertical, true) => p * b.count(m - 1) + b.face(m, i, q),
                (Axis::Vertical, false) => p * b.count(m + 1) + b.degeneracy(m, i, q),
            }
        },
    );
    Ok(BiSSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g)?))
}

/// `f □ g: A □ A' -> B □ B'`.
pub fn box_maps(f: &SMap, g: &SMap) -> Result<BiMap> {
    let src = Arc::new(box_product(f.source(), g.source())?);
    let tgt = Arc::new(box_product(f.target(), g.target())?);
    let l = src.layout();
    let comps = (0..l.grade_count())
        .map(|gr| {
            let (n, m) = l.bigrade(gr);
            let bm = g.source().count(m);
            let tm = g.target().count(m);
            (0..src.inner.sizes[gr]).map(|x| f.apply(n, x / bm) * tm + g.apply(m, x % bm)).collect()
        })
        .collect();
    Ok(BiMap::new_unchecked(src, tgt, comps))
}

/// Pushout of bisimplicial maps sharing a source, with its structure maps.
pub fn bipushout(f: &BiMap, g: &BiMap) -> Result<(Arc<BiSSet>, BiMap, BiMap)> {
    if f.source.inner != g.source.inner {
        return Err(Error::Validation("pushout legs must share their source".into()));
    }
    let (p, l, r) = Presheaf::pushout(&f.source.inner, &f.target.inner, &g.target.inner, &f.components, &g.components);
    let p = Arc::new(BiSSet::wrap(p));
    Ok((
        p.clone(),
        BiMap::new_unchecked(f.target.clone(), p.clone(), l),
        BiMap::new_unchecked(g.target.clone(), p, r),
    ))
}

/// The pushout-product `u □' v: (A □ B') ∪_{A □ A'} (B □ A') -> B □ B'` of
/// monomorphisms `u: A -> B` (horizontal) and `v: A' -> B'` (vertical).
pub fn pushout_product(u: &SMap, v: &SMap) -> Result<BiMap> {
    check_same_truncation(u.source(), v.source())?;
    for (name, m) in [("u", u), ("v", v)] {
        if !m.is_mono() {
            return Err(Error::NotMono(format!("pushout-product argument {name}")));
        }
    }
    let id_a = SMap::identity(u.source().clone());
    let id_b = SMap::identity(u.target().clone());
    let id_a2 = SMap::identity(v.source().clone());
    let id_b2 = SMap::identity(v.target().clone());
    let a_v = box_maps(&id_a, v)?; // A□A' -> A□B'
    let u_a2 = box_maps(u, &id_a2)?; // A□A' -> B□A'
    let u_b2 = box_maps(u, &id_b2)?; // A□B' -> B□B'
    let b_v = box_maps(&id_b, v)?; // B□A' -> B□B'
    let (q, from_left, from_right) = bipushout(&a_v, &u_a2)?;
    let target = u_b2.target.clone();
    let mut comps: Components = q.inner.sizes.iter().map(|&s| vec![usize::MAX; s]).collect();
    for (leg, via) in [(&u_b2, &from_left), (&b_v, &from_right)] {
        for gr in 0..comps.len() {
            for (x, &p) in via.components[gr].iter().enumerate() {
                comps[gr][p] = leg.components[gr][x];
            }
        }
    }
    BiMap::new(q, target, comps)
}

/// `p₁*A`: every row is `A`, i.e. `X_{n,m} = A_n`.
pub fn const_rows(a: &SSet) -> BiSSet {
    let l = Layout::Bisimplicial(a.truncation());
    let (s, f, g) = l.build_tables(
        |n, _| a.count(n),
        |n, _, axis, face, i, x| match (axis, face) {
            (Axis::Horizontal, true) => a.face(n, i, x),
            (Axis::Horizontal, false) => a.degeneracy(n, i, x),
            (Axis::Vertical, _) => x,
        },
    );
    BiSSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("const rows"))
}

/// `p₁*f`, acting as `f_n` on every `X_{n,m}`.
pub fn const_rows_map(f: &SMap) -> BiMap {
    let src = Arc::new(const_rows(f.source()));
    let tgt = Arc::new(const_rows(f.target()));
    let l = src.layout();
    let comps = (0..l.grade_count()).map(|g| f.components()[l.bigrade(g).0].clone()).collect();
    BiMap::new_unchecked(src, tgt, comps)
}

/// `p₂*A`: every column is `A`, i.e. `X_{n,m} = A_m`.
pub fn const_cols(a: &SSet) -> BiSSet {
    let l = Layout::Bisimplicial(a.truncation());
    let (s, f, g) = l.build_tables(
        |_, m| a.count(m),
        |_, m, axis, face, i, x| match (axis, face) {
            (Axis::Vertical, true) => a.face(m, i, x),
            (Axis::Vertical, false) => a.degeneracy(m, i, x),
            (Axis::Horizontal, _) => x,
        },
    );
    BiSSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("const cols"))
}

/// `ι₁*X = X_{•0}`.
pub fn row0(x: &BiSSet) -> SSet {
    x.row(0)
}

/// `ι₂*X = X_{0•}`.
pub fn col0(x: &BiSSet) -> SSet {
    x.column(0)
}

/// `σ*X`, swapping the two indices.
pub fn transpose(x: &BiSSet) -> BiSSet {
    let l = Layout::Bisimplicial(x.truncation());
    let (s, f, g) = l.build_tables(
        |n, m| x.count(m, n),
        |n, m, axis, face, i, y| {
            let swapped = match axis {
                Axis::Horizontal => Axis::Vertical,
                Axis::Vertical => Axis::Horizontal,
            };
            x.op(m, n, swapped, face, i, y)
        },
    );
    BiSSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("transpose"))
}

/// `σ*f`.
pub fn transpose_map(f: &BiMap) -> BiMap {
    let src = Arc::new(transpose(&f.source));
    let tgt = Arc::new(transpose(&f.target));
    let l = src.layout();
    let comps = (0..l.grade_count())
        .map(|g| {
            let (n, m) = l.bigrade(g);
            f.components[l.grade(m, n)].clone()
        })
        .collect();
    BiMap::new_unchecked(src, tgt, comps)
}

/// `d*X`, with `(d*X)_n = X_{n,n}` and operators acting in both indices.
pub fn diagonal(x: &BiSSet) -> SSet {
    let l = Layout::Simplicial(x.truncation());
    let (s, f, g) = l.build_tables(
        |n, _| x.count(n, n),
        |n, _, _, face, i, y| {
            if face {
                x.vface(n - 1, n, i, x.hface(n, n, i, y))
            } else {
                x.vdegeneracy(n + 1, n, i, x.hdegeneracy(n, n, i, y))
            }
        },
    );
    SSet::wrap(Presheaf::from_tables_unchecked(l, s, f, g).expect("diagonal"), None)
}

/// Which structure maps a check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Maps `X_n -> X_m` between columns, induced by the first index.
    BetweenColumns,
    /// Maps `X_{•m} -> X_{•k}` between rows, induced by the second index.
    BetweenRows,
}

/// Are all elementary structure maps in the given direction bijections?
pub fn structure_maps_bijective(x: &BiSSet, direction: Direction) -> bool {
    let d = x.truncation();
    let axis = match direction {
        Direction::BetweenColumns => Axis::Horizontal,
        Direction::BetweenRows => Axis::Vertical,
    };
    let shifted = |n: usize, m: usize, up: bool| {
        let step = |k: usize| if up { k + 1 } else { k - 1 };
        match axis {
            Axis::Horizontal => (step(n), m),
            Axis::Vertical => (n, step(m)),
        }
    };
    for n in 0..=d {
        for m in 0..=d {
            let k = if axis == Axis::Horizontal { n } else { m };
            let mut ops = Vec::new();
            if k >= 1 {
                ops.extend((0..=k).map(|i| (true, i)));
            }
            if k < d {
                ops.extend((0..=k).map(|j| (false, j)));
            }
            for (face, i) in ops {
                let (tn, tm) = shifted(n, m, !face);
                let size = x.count(tn, tm);
                if x.count(n, m) != size {
                    return false;
                }
                let mut seen = vec![false; size];
                for y in 0..x.count(n, m) {
                    let z = x.op(n, m, axis, face, i, y);
                    if std::mem::replace(&mut seen[z], true) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
