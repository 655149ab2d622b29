//! Truncated simplicial sets, simplicial maps, subcomplexes and pushouts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ordinal::OrdinalMap;
use crate::presheaf::{self, Components, Layout, Presheaf, UnionFind};

/// Eilenberg-Zilber normal form `x = epi^*(core)` with `core` nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EzForm {
    pub core_dim: usize,
    pub core: usize,
    pub epi: OrdinalMap,
}

/// A simplicial set truncated at dimension `D`.
///
/// All simplices, degenerate ones included, are stored explicitly; simplex
/// identity is the index within its dimension. Simplices may carry vertex
/// sequence labels (shapes and conical nerves do).
#[derive(Clone)]
pub struct SSet {
    pub(crate) inner: Presheaf,
    labels: Option<Vec<Vec<Vec<usize>>>>,
    ez: Vec<Vec<EzForm>>,
}

impl PartialEq for SSet {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner && self.labels == other.labels
    }
}

impl Eq for SSet {}

impl fmt::Debug for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SSet")
            .field("truncation", &self.truncation())
            .field("counts", &self.counts())
            .field("nondegenerate", &self.nondegenerate_counts())
            .finish()
    }
}

impl SSet {
    pub(crate) fn wrap(inner: Presheaf, labels: Option<Vec<Vec<Vec<usize>>>>) -> Self {
        debug_assert!(matches!(inner.layout, Layout::Simplicial(_)));
        let d = inner.layout.truncation();
        let mut ez: Vec<Vec<EzForm>> = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut row = Vec::with_capacity(inner.sizes[n]);
            for x in 0..inner.sizes[n] {
                let form = match inner.witness(n, x) {
                    None => EzForm { core_dim: n, core: x, epi: OrdinalMap::identity(n) },
                    Some(w) => {
                        let below: &EzForm = &ez[n - 1][w.simplex];
                        let sj = OrdinalMap::codegeneracy(n - 1, w.op).expect("codegeneracy");
                        EzForm {
                            core_dim: below.core_dim,
                            core: below.core,
                            epi: below.epi.compose(&sj).expect("epi composite"),
                        }
                    }
                };
                row.push(form);
            }
            ez.push(row);
        }
        SSet { inner, labels, ez }
    }

    /// Builds a simplicial set from explicit face and degeneracy tables.
    ///
    /// `faces[n][i][x] = d_i x` for `1 <= n <= D`; `degeneracies[n][j][x] =
    /// s_j x` for `n < D`. The simplicial identities are checked.
    pub fn from_tables(
        truncation: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let p = Presheaf::from_tables(Layout::Simplicial(truncation), counts, faces, degeneracies)?;
        Ok(Self::wrap(p, None))
    }

    /// Builds the simplicial set whose `m`-simplices are the given vertex
    /// sequences of length `m + 1`, with `d_i` deleting and `s_j` repeating the
    /// `i`-th entry. The sets must be closed under both.
    pub fn from_sequences(truncation: usize, simplices: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if simplices.len() != truncation + 1 {
            return Err(Error::Validation("one simplex list per dimension expected".into()));
        }
        for (m, list) in simplices.iter().enumerate() {
            if list.iter().any(|s| s.len() != m + 1) {
                return Err(Error::Validation(format!("{m}-simplices must have {} vertices", m + 1)));
            }
        }
        let p = Presheaf::from_keys(
            Layout::Simplicial(truncation),
            simplices.clone(),
            |_, i, s: &Vec<usize>| {
                let mut t = s.clone();
                t.remove(i);
                t
            },
            |_, j, s: &Vec<usize>| {
                let mut t = s.clone();
                t.insert(j, s[j]);
                t
            },
        )?;
        Ok(Self::wrap(p, Some(simplices)))
    }

    pub fn empty(truncation: usize) -> Self {
        Self::wrap(Presheaf::empty(Layout::Simplicial(truncation)), None)
    }

    pub fn terminal(truncation: usize) -> Self {
        Self::wrap(Presheaf::terminal(Layout::Simplicial(truncation)), None)
    }

    pub fn truncation(&self) -> usize {
        self.inner.layout.truncation()
    }

    pub fn count(&self, n: usize) -> usize {
        self.inner.sizes[n]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.inner.sizes.clone()
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        self.inner.nondegenerate(n)
    }

    /// Number of nondegenerate simplices per dimension, trailing zeros dropped.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..=self.truncation()).map(|n| self.nondegenerate(n).len()).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Highest dimension carrying a nondegenerate simplex, if any.
    pub fn top_dimension(&self) -> Option<usize> {
        self.nondegenerate_counts().len().checked_sub(1)
    }

    pub fn is_nondegenerate(&self, n: usize, x: usize) -> bool {
        self.inner.is_nondegenerate(n, x)
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.inner.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.inner.degens[n][j][x]
    }

    pub fn ez_normal_form(&self, n: usize, x: usize) -> &EzForm {
        &self.ez[n][x]
    }

    pub fn label(&self, n: usize, x: usize) -> Option<&[usize]> {
        self.labels.as_ref().map(|l| l[n][x].as_slice())
    }

    pub fn labels(&self) -> Option<&Vec<Vec<Vec<usize>>>> {
        self.labels.as_ref()
    }

    pub fn find_label(&self, label: &[usize]) -> Option<usize> {
        let n = label.len().checked_sub(1)?;
        self.labels.as_ref()?.get(n)?.iter().position(|l| l == label)
    }

    /// `f^*(x)` for `f: [m] -> [n]` and an `n`-simplex `x`.
    pub fn act(&self, f: &OrdinalMap, x: usize) -> Result<usize> {
        let d = self.truncation();
        if f.domain() > d || f.codomain() > d {
            return Err(Error::OutOfRange(format!("{f} exceeds truncation {d}")));
        }
        let (epi, mono) = f.ez_factor();
        let mut y = x;
        let mut dim = mono.codomain();
        for i in mono.missing_values_desc() {
            y = self.face(dim, i, y);
            dim -= 1;
        }
        Ok(self.act_epi(epi.values(), y))
    }

    fn act_epi(&self, epi: &[usize], y: usize) -> usize {
        match epi.windows(2).position(|w| w[0] == w[1]) {
            None => y,
            Some(j) => {
                let mut rest = epi.to_vec();
                rest.remove(j + 1);
                let z = self.act_epi(&rest, y);
                self.degeneracy(rest.len() - 1, j, z)
            }
        }
    }

    /// Exhaustively checks `(g∘f)^* = f^* g^*` and `id^* = id` for all ordinal
    /// maps within the truncation.
    pub fn check_functoriality(&self) -> Result<()> {
        let d = self.truncation();
        let maps: Vec<Vec<Vec<OrdinalMap>>> =
            (0..=d).map(|m| (0..=d).map(|n| OrdinalMap::all(m, n)).collect()).collect();
        for n in 0..=d {
            for x in 0..self.count(n) {
                if self.act(&OrdinalMap::identity(n), x)? != x {
                    return Err(Error::Validation(format!("identity acts nontrivially on {n}-simplex {x}")));
                }
                for k in 0..=d {
                    for g in &maps[k][n] {
                        let gx = self.act(g, x)?;
                        for m in 0..=d {
                            for f in &maps[m][k] {
                                if self.act(&g.compose(f)?, x)? != self.act(f, gx)? {
                                    return Err(Error::Validation(format!(
                                        "functoriality fails for {g} after {f} on {n}-simplex {x}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_identities(&self) -> Result<()> {
        self.inner.check_identities()
    }
}

/// A simplicial map between simplicial sets of the same truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct SMap {
    source: Arc<SSet>,
    target: Arc<SSet>,
    components: Components,
}

impl fmt::Debug for SMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SMap")
            .field("source", &self.source.counts())
            .field("target", &self.target.counts())
            .field("components", &self.components)
            .finish()
    }
}

impl SMap {
    pub fn new(source: Arc<SSet>, target: Arc<SSet>, components: Vec<Vec<usize>>) -> Result<Self> {
        source.inner.check_natural(&target.inner, &components)?;
        Ok(SMap { source, target, components })
    }

    pub(crate) fn new_unchecked(source: Arc<SSet>, target: Arc<SSet>, components: Components) -> Self {
        debug_assert!(source.inner.check_natural(&target.inner, &components).is_ok());
        SMap { source, target, components }
    }

    pub fn identity(x: Arc<SSet>) -> Self {
        let c = x.inner.identity_map();
        SMap { source: x.clone(), target: x, components: c }
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.target
    }

    pub fn components(&self) -> &Vec<Vec<usize>> {
        &self.components
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SMap) -> Result<SMap> {
        if inner.target.inner != self.source.inner {
            return Err(Error::Validation("maps are not composable".into()));
        }
        Ok(SMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components: presheaf::compose(&self.components, &inner.components),
        })
    }

    pub fn is_mono(&self) -> bool {
        presheaf::is_injective(&self.components, &self.target.inner.sizes)
    }

    pub fn is_epi(&self) -> bool {
        let img = self.target.inner.image(&self.source.inner.sizes, &self.components);
        img.iter().all(|g| g.iter().all(|&b| b))
    }

    pub fn is_iso(&self) -> bool {
        presheaf::is_bijective(&self.components, &self.target.inner.sizes)
    }

    /// Same components and same endpoints.
    pub fn same_as(&self, other: &SMap) -> bool {
        self.components == other.components
            && self.source.inner == other.source.inner
            && self.target.inner == other.target.inner
    }

    pub fn image(&self) -> Subcomplex {
        let members = self.target.inner.image(&self.source.inner.sizes, &self.components);
        Subcomplex { ambient: self.target.clone(), members }
    }
}

/// A subcomplex: a per-dimension subset closed under faces and degeneracies.
#[derive(Clone, PartialEq, Eq)]
pub struct Subcomplex {
    ambient: Arc<SSet>,
    members: Vec<Vec<bool>>,
}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subcomplex")
            .field("counts", &self.counts())
            .field("nondegenerate", &self.nondegenerate_counts())
            .finish()
    }
}

impl Subcomplex {
    pub fn from_members(ambient: Arc<SSet>, members: Vec<Vec<bool>>) -> Result<Self> {
        if members.len() != ambient.truncation() + 1
            || members.iter().zip(ambient.counts()).any(|(m, c)| m.len() != c)
        {
            return Err(Error::Validation("membership shape does not match ambient".into()));
        }
        if !ambient.inner.is_closed(&members) {
            return Err(Error::Validation("membership is not closed under faces and degeneracies".into()));
        }
        Ok(Subcomplex { ambient, members })
    }

    /// Smallest subcomplex containing the listed `(dimension, index)` simplices.
    pub fn generated_by(ambient: Arc<SSet>, generators: &[(usize, usize)]) -> Result<Self> {
        let mut members: Vec<Vec<bool>> = ambient.counts().iter().map(|&c| vec![false; c]).collect();
        for &(n, x) in generators {
            if n > ambient.truncation() || x >= ambient.count(n) {
                return Err(Error::OutOfRange(format!("no {n}-simplex {x} in ambient")));
            }
            members[n][x] = true;
        }
        let members = ambient.inner.closure(members);
        Ok(Subcomplex { ambient, members })
    }

    /// Smallest subcomplex containing the simplices with the given labels.
    pub fn generated_by_labels(ambient: Arc<SSet>, labels: &[Vec<usize>]) -> Result<Self> {
        let gens = labels
            .iter()
            .map(|l| {
                ambient
                    .find_label(l)
                    .map(|x| (l.len() - 1, x))
                    .ok_or_else(|| Error::Validation(format!("no simplex labelled {l:?} in ambient")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(ambient, &gens)
    }

    pub fn full(ambient: Arc<SSet>) -> Self {
        let members = ambient.counts().iter().map(|&c| vec![true; c]).collect();
        Subcomplex { ambient, members }
    }

    pub fn empty(ambient: Arc<SSet>) -> Self {
        let members = ambient.counts().iter().map(|&c| vec![false; c]).collect();
        Subcomplex { ambient, members }
    }

    pub fn ambient(&self) -> &Arc<SSet> {
        &self.ambient
    }

    pub fn members(&self) -> &Vec<Vec<bool>> {
        &self.members
    }

    pub fn contains(&self, n: usize, x: usize) -> bool {
        self.members[n][x]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.iter().filter(|&&b| b).count()).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.members.len())
            .map(|n| (0..self.members[n].len()).filter(|&x| self.members[n][x] && self.ambient.is_nondegenerate(n, x)).count())
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Nondegenerate members as `(dimension, index)`, dimension-major.
    pub fn nondegenerate_members(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in 0..self.members.len() {
            for x in 0..self.members[n].len() {
                if self.members[n][x] && self.ambient.is_nondegenerate(n, x) {
                    out.push((n, x));
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.iter().zip(b).map(|(&p, &q)| p || q).collect())
            .collect();
        Subcomplex { ambient: self.ambient.clone(), members }
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.iter().zip(b).map(|(&p, &q)| p && q).collect())
            .collect();
        Subcomplex { ambient: self.ambient.clone(), members }
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| a.iter().zip(b).all(|(&p, &q)| !p || q))
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|m| m.iter().all(|&b| b))
    }

    /// The subcomplex as a simplicial set (labels inherited) with its inclusion.
    pub fn realize(&self) -> (Arc<SSet>, SMap) {
        let (p, incl) = self.ambient.inner.restrict(&self.members);
        let labels = self.ambient.labels().map(|l| {
            incl.iter().enumerate().map(|(n, xs)| xs.iter().map(|&x| l[n][x].clone()).collect()).collect()
        });
        let s = Arc::new(SSet::wrap(p, labels));
        let map = SMap::new_unchecked(s.clone(), self.ambient.clone(), incl);
        (s, map)
    }
}

/// The result of a pushout `B ∪_A C` with its two structure maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<SSet>,
    pub from_left: SMap,
    pub from_right: SMap,
}

impl Pushout {
    /// The unique map out of the pushout induced by a cocone `(h, k)`.
    pub fn induced(&self, h: &SMap, k: &SMap) -> Result<SMap> {
        if h.target.inner != k.target.inner {
            return Err(Error::Validation("cocone legs have different targets".into()));
        }
        let target = h.target.clone();
        let mut comps: Components = self.object.counts().iter().map(|&c| vec![usize::MAX; c]).collect();
        for (leg, via) in [(h, &self.from_left), (k, &self.from_right)] {
            for n in 0..comps.len() {
                for (x, &p) in via.components[n].iter().enumerate() {
                    let v = leg.components[n][x];
                    if comps[n][p] != usize::MAX && comps[n][p] != v {
                        return Err(Error::Validation("cocone does not commute over the apex".into()));
                    }
                    comps[n][p] = v;
                }
            }
        }
        SMap::new(self.object.clone(), target, comps)
    }
}

/// Dimensionwise pushout of `f: A -> B` and `g: A -> C`.
pub fn pushout(f: &SMap, g: &SMap) -> Result<Pushout> {
    if f.source.truncation() != g.source.truncation() || f.target.truncation() != g.target.truncation() {
        return Err(Error::TruncationMismatch { left: f.source.truncation(), right: g.source.truncation() });
    }
    if f.source.inner != g.source.inner {
        return Err(Error::Validation("pushout legs must share their source".into()));
    }
    let (p, l, r) = Presheaf::pushout(&f.source.inner, &f.target.inner, &g.target.inner, &f.components, &g.components);
    let object = Arc::new(SSet::wrap(p, None));
    Ok(Pushout {
        from_left: SMap::new_unchecked(f.target.clone(), object.clone(), l),
        from_right: SMap::new_unchecked(g.target.clone(), object.clone(), r),
        object,
    })
}

/// Disjoint union with its injections.
pub fn coproduct(parts: &[Arc<SSet>]) -> Result<(Arc<SSet>, Vec<SMap>)> {
    let d = parts.first().map(|p| p.truncation()).ok_or_else(|| Error::Validation("empty coproduct needs a truncation; use SSet::empty".into()))?;
    if let Some(p) = parts.iter().find(|p| p.truncation() != d) {
        return Err(Error::TruncationMismatch { left: d, right: p.truncation() });
    }
    let refs: Vec<&Presheaf> = parts.iter().map(|p| &p.inner).collect();
    let (c, inj) = Presheaf::coproduct(&refs, Layout::Simplicial(d));
    let c = Arc::new(SSet::wrap(c, None));
    let maps = parts.iter().zip(inj).map(|(p, i)| SMap::new_unchecked(p.clone(), c.clone(), i)).collect();
    Ok((c, maps))
}

/// Copairing `[f, g, ...]: ⨿ A_i -> X` for maps sharing a target.
pub fn copair(coproduct_obj: &Arc<SSet>, injections: &[SMap], maps: &[SMap]) -> Result<SMap> {
    let target = maps.first().map(|m| m.target.clone()).ok_or_else(|| Error::Validation("nothing to copair".into()))?;
    let mut comps: Components = coproduct_obj.counts().iter().map(|&c| vec![usize::MAX; c]).collect();
    for (inj, m) in injections.iter().zip(maps) {
        for n in 0..comps.len() {
            for (x, &p) in inj.components[n].iter().enumerate() {
                comps[n][p] = m.components[n][x];
            }
        }
    }
    SMap::new(coproduct_obj.clone(), target, comps)
}

/// Dimensionwise pullback `P = Q ×_R S` of `f: Q -> R` and `g: S -> R`;
/// elements are pairs `(q, s)` in lexicographic order.
pub fn pullback(f: &SMap, g: &SMap) -> Result<(Arc<SSet>, SMap, SMap)> {
    if f.target.inner != g.target.inner {
        return Err(Error::Validation("pullback legs must share their target".into()));
    }
    let d = f.target.truncation();
    let keys: Vec<Vec<(usize, usize)>> = (0..=d)
        .map(|n| {
            let mut ks = Vec::new();
            for q in 0..f.source.count(n) {
                for s in 0..g.source.count(n) {
                    if f.apply(n, q) == g.apply(n, s) {
                        ks.push((q, s));
                    }
                }
            }
            ks
        })
        .collect();
    let p = Presheaf::from_keys(
        Layout::Simplicial(d),
        keys.clone(),
        |n, i, &(q, s)| (f.source.face(n, i, q), g.source.face(n, i, s)),
        |n, j, &(q, s)| (f.source.degeneracy(n, j, q), g.source.degeneracy(n, j, s)),
    )?;
    let object = Arc::new(SSet::wrap(p, None));
    let proj = |left: bool| -> Components {
        keys.iter().map(|ks| ks.iter().map(|&(q, s)| if left { q } else { s }).collect()).collect()
    };
    Ok((
        object.clone(),
        SMap::new_unchecked(object.clone(), f.source.clone(), proj(true)),
        SMap::new_unchecked(object, g.source.clone(), proj(false)),
    ))
}

/// Is there an isomorphism `a ≅ b`? Decided by searching for a bijective
/// map; intended for the small objects of the test corpus.
pub fn isomorphic(a: &SSet, b: &SSet) -> bool {
    if a.counts() != b.counts() || a.nondegenerate_counts() != b.nondegenerate_counts() {
        return false;
    }
    let mut found = false;
    let _ = a.inner.search_maps(&b.inner, &|_, _| None, |c| {
        if presheaf::is_bijective(c, &b.inner.sizes) {
            found = true;
            return false;
        }
        true
    });
    found
}

/// Connected components of the vertices: classes of the relation generated by
/// `d_1 e ~ d_0 e`, each sorted, listed by smallest member.
pub fn pi0(x: &SSet) -> Vec<Vec<usize>> {
    let n0 = x.count(0);
    let mut uf = UnionFind::new(n0);
    if x.truncation() >= 1 {
        for e in 0..x.count(1) {
            uf.union(x.face(1, 0, e), x.face(1, 1, e));
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n0 {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(n: usize, d: usize) -> Arc<SSet> {
        let seqs = (0..=d).map(|m| OrdinalMap::all(m, n).into_iter().map(|f| f.values().to_vec()).collect()).collect();
        Arc::new(SSet::from_sequences(d, seqs).unwrap())
    }

    #[test]
    fn simplex_counts() {
        let s = simplex(2, 3);
        assert_eq!(s.counts(), vec![3, 6, 10, 15]);
        assert_eq!(s.nondegenerate_counts(), vec![3, 3, 1]);
        s.check_functoriality().unwrap();
    }

    #[test]
    fn ez_form_recovers_core() {
        let s = simplex(2, 3);
        let x = s.find_label(&[0, 0, 2, 2]).unwrap();
        let form = s.ez_normal_form(3, x);
        assert_eq!(form.core_dim, 1);
        assert_eq!(s.label(1, form.core).unwrap(), &[0, 2]);
        assert_eq!(form.epi.values(), &[0, 0, 1, 1]);
        assert_eq!(s.act(&form.epi, form.core).unwrap(), x);
    }

    #[test]
    fn rejects_broken_identities() {
        // two vertices, one edge with d0 = d1 = 0 but s0 of vertex 1 claims faces 0
        let r = SSet::from_tables(
            1,
            vec![2, 3],
            vec![vec![], vec![vec![0, 0, 1], vec![0, 0, 0]]],
            vec![vec![vec![1, 0]], vec![]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn pushout_along_identity() {
        let a = simplex(1, 2);
        let id = SMap::identity(a.clone());
        let p = pushout(&id, &id).unwrap();
        assert!(isomorphic(&p.object, &a));
    }

    #[test]
    fn pi0_of_boundary() {
        let a = simplex(1, 2);
        let b = Subcomplex::generated_by_labels(a.clone(), &[vec![0], vec![1]]).unwrap();
        let (bd, _) = b.realize();
        assert_eq!(pi0(&bd).len(), 2);
        assert_eq!(pi0(&a).len(), 1);
    }

    #[test]
    fn subcomplex_rejects_unclosed() {
        let a = simplex(1, 1);
        let mut m: Vec<Vec<bool>> = a.counts().iter().map(|&c| vec![false; c]).collect();
        let e = a.find_label(&[0, 1]).unwrap();
        m[1][e] = true;
        assert!(Subcomplex::from_members(a, m).is_err());
    }
}
