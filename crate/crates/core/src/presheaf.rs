//! Table-backed finite presheaves on truncations of `Δ` and `Δ × Δ`.
//!
//! Both simplicial and bisimplicial sets are stored as a family of finite sets
//! indexed by *grades* together with tables for the elementary face and
//! degeneracy operators. Everything generic (map enumeration, pushouts,
//! coproducts, images, naturality checks) lives here once and is wrapped by
//! the typed [`crate::SSet`] and [`crate::BiSSet`] front ends.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Per-grade component functions of a natural transformation.
pub(crate) type Components = Vec<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Layout {
    Simplicial(usize),
    Bisimplicial(usize),
}

/// Which variable an elementary operator acts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Axis {
    Horizontal,
    Vertical,
}

impl Layout {
    pub fn truncation(self) -> usize {
        match self {
            Layout::Simplicial(d) | Layout::Bisimplicial(d) => d,
        }
    }

    pub fn grade_count(self) -> usize {
        match self {
            Layout::Simplicial(d) => d + 1,
            Layout::Bisimplicial(d) => (d + 1) * (d + 1),
        }
    }

    pub fn bigrade(self, g: usize) -> (usize, usize) {
        match self {
            Layout::Simplicial(_) => (g, 0),
            Layout::Bisimplicial(d) => (g / (d + 1), g % (d + 1)),
        }
    }

    pub fn grade(self, n: usize, m: usize) -> usize {
        match self {
            Layout::Simplicial(_) => n,
            Layout::Bisimplicial(d) => n * (d + 1) + m,
        }
    }

    pub fn total_dim(self, g: usize) -> usize {
        let (n, m) = self.bigrade(g);
        n + m
    }

    /// Grades sorted by total dimension; every face lands in an earlier grade.
    pub fn order(self) -> Vec<usize> {
        let mut gs: Vec<usize> = (0..self.grade_count()).collect();
        gs.sort_by_key(|&g| (self.total_dim(g), g));
        gs
    }

    /// Targets of the elementary faces out of `g`, horizontal faces first.
    pub fn face_targets(self, g: usize) -> Vec<usize> {
        let (n, m) = self.bigrade(g);
        let mut out = Vec::new();
        if n >= 1 {
            out.extend(std::iter::repeat(self.grade(n - 1, m)).take(n + 1));
        }
        if let Layout::Bisimplicial(_) = self {
            if m >= 1 {
                out.extend(std::iter::repeat(self.grade(n, m - 1)).take(m + 1));
            }
        }
        out
    }

    /// Targets of the elementary degeneracies out of `g`, horizontal first.
    pub fn degen_targets(self, g: usize) -> Vec<usize> {
        let d = self.truncation();
        let (n, m) = self.bigrade(g);
        let mut out = Vec::new();
        if n < d {
            out.extend(std::iter::repeat(self.grade(n + 1, m)).take(n + 1));
        }
        if let Layout::Bisimplicial(_) = self {
            if m < d {
                out.extend(std::iter::repeat(self.grade(n, m + 1)).take(m + 1));
            }
        }
        out
    }

    pub fn face_op(self, g: usize, axis: Axis, i: usize) -> usize {
        let (n, _) = self.bigrade(g);
        match axis {
            Axis::Horizontal => i,
            Axis::Vertical => i + if n >= 1 { n + 1 } else { 0 },
        }
    }

    /// Axis and index of the `k`-th elementary face out of `g`.
    pub fn face_axis(self, g: usize, k: usize) -> (Axis, usize) {
        let (n, _) = self.bigrade(g);
        let h = if n >= 1 { n + 1 } else { 0 };
        if k < h {
            (Axis::Horizontal, k)
        } else {
            (Axis::Vertical, k - h)
        }
    }

    /// Axis and index of the `k`-th elementary degeneracy out of `g`.
    pub fn degen_axis(self, g: usize, k: usize) -> (Axis, usize) {
        let (n, _) = self.bigrade(g);
        let h = if n < self.truncation() { n + 1 } else { 0 };
        if k < h {
            (Axis::Horizontal, k)
        } else {
            (Axis::Vertical, k - h)
        }
    }

    /// Builds tables from a size function and an operator function
    /// `op(n, m, axis, is_face, index, x)`.
    pub fn build_tables(
        self,
        size: impl Fn(usize, usize) -> usize,
        op: impl Fn(usize, usize, Axis, bool, usize, usize) -> usize,
    ) -> (Vec<usize>, Vec<Vec<Vec<usize>>>, Vec<Vec<Vec<usize>>>) {
        let gc = self.grade_count();
        let mut sizes = Vec::with_capacity(gc);
        let mut faces = Vec::with_capacity(gc);
        let mut degens = Vec::with_capacity(gc);
        for g in 0..gc {
            let (n, m) = self.bigrade(g);
            let s = size(n, m);
            sizes.push(s);
            faces.push(
                (0..self.face_targets(g).len())
                    .map(|k| {
                        let (ax, i) = self.face_axis(g, k);
                        (0..s).map(|x| op(n, m, ax, true, i, x)).collect()
                    })
                    .collect(),
            );
            degens.push(
                (0..self.degen_targets(g).len())
                    .map(|k| {
                        let (ax, j) = self.degen_axis(g, k);
                        (0..s).map(|x| op(n, m, ax, false, j, x)).collect()
                    })
                    .collect(),
            );
        }
        (sizes, faces, degens)
    }

    pub fn degen_op(self, g: usize, axis: Axis, j: usize) -> usize {
        let (n, _) = self.bigrade(g);
        match axis {
            Axis::Horizontal => j,
            Axis::Vertical => j + if n < self.truncation() { n + 1 } else { 0 },
        }
    }
}

/// How a degenerate simplex arises: `degens[source][op][simplex]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Witness {
    pub source: usize,
    pub op: usize,
    pub simplex: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Presheaf {
    pub layout: Layout,
    pub sizes: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
    witness: Vec<Vec<Option<Witness>>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        self.layout == other.layout
            && self.sizes == other.sizes
            && self.faces == other.faces
            && self.degens == other.degens
    }
}

impl Eq for Presheaf {}

impl Presheaf {
    /// Assembles a presheaf from raw tables, checking shapes, ranges and the
    /// (bi)simplicial identities.
    pub fn from_tables(
        layout: Layout,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let p = Self::from_tables_unchecked(layout, sizes, faces, degens)?;
        p.check_identities()?;
        Ok(p)
    }

    /// Shape and range checks only.
    pub fn from_tables_unchecked(
        layout: Layout,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let gc = layout.grade_count();
        if sizes.len() != gc || faces.len() != gc || degens.len() != gc {
            return Err(Error::Validation(format!(
                "expected {gc} grades, got sizes {} faces {} degeneracies {}",
                sizes.len(),
                faces.len(),
                degens.len()
            )));
        }
        for g in 0..gc {
            for (kind, tables, targets) in [
                ("face", &faces[g], layout.face_targets(g)),
                ("degeneracy", &degens[g], layout.degen_targets(g)),
            ] {
                if tables.len() != targets.len() {
                    return Err(Error::Validation(format!(
                        "grade {:?}: expected {} {kind} operators, got {}",
                        layout.bigrade(g),
                        targets.len(),
                        tables.len()
                    )));
                }
                for (k, (t, &tg)) in tables.iter().zip(&targets).enumerate() {
                    if t.len() != sizes[g] {
                        return Err(Error::Validation(format!(
                            "grade {:?}: {kind} {k} has {} entries, expected {}",
                            layout.bigrade(g),
                            t.len(),
                            sizes[g]
                        )));
                    }
                    if let Some(bad) = t.iter().find(|&&v| v >= sizes[tg]) {
                        return Err(Error::Validation(format!(
                            "grade {:?}: {kind} {k} value {bad} out of range {}",
                            layout.bigrade(g),
                            sizes[tg]
                        )));
                    }
                }
            }
        }
        let mut p = Presheaf { layout, sizes, faces, degens, witness: Vec::new() };
        p.compute_witnesses();
        Ok(p)
    }

    fn compute_witnesses(&mut self) {
        let mut witness: Vec<Vec<Option<Witness>>> =
            self.sizes.iter().map(|&s| vec![None; s]).collect();
        for g in self.layout.order() {
            for (op, &tg) in self.layout.degen_targets(g).iter().enumerate() {
                for y in 0..self.sizes[g] {
                    let x = self.degens[g][op][y];
                    if witness[tg][x].is_none() {
                        witness[tg][x] = Some(Witness { source: g, op, simplex: y });
                    }
                }
            }
        }
        self.witness = witness;
    }

    /// Builds a presheaf from labelled simplices; faces and degeneracies are
    /// computed on labels and looked up. Labels must be closed under all
    /// operators and distinct within a grade.
    pub fn from_keys<K, F, S>(layout: Layout, keys: Vec<Vec<K>>, face: F, degen: S) -> Result<Self>
    where
        K: Clone + Eq + Hash + std::fmt::Debug,
        F: Fn(usize, usize, &K) -> K,
        S: Fn(usize, usize, &K) -> K,
    {
        let gc = layout.grade_count();
        assert_eq!(keys.len(), gc);
        let index: Vec<HashMap<&K, usize>> = keys
            .iter()
            .map(|ks| ks.iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        for (g, ks) in keys.iter().enumerate() {
            if index[g].len() != ks.len() {
                return Err(Error::Validation(format!(
                    "duplicate labels in grade {:?}",
                    layout.bigrade(g)
                )));
            }
        }
        let lookup = |tg: usize, k: &K| -> Result<usize> {
            index[tg].get(k).copied().ok_or_else(|| {
                Error::Validation(format!(
                    "label {k:?} missing from grade {:?}",
                    layout.bigrade(tg)
                ))
            })
        };
        let mut faces = Vec::with_capacity(gc);
        let mut degens = Vec::with_capacity(gc);
        for g in 0..gc {
            let mut fg = Vec::new();
            for (op, &tg) in layout.face_targets(g).iter().enumerate() {
                fg.push(keys[g].iter().map(|k| lookup(tg, &face(g, op, k))).collect::<Result<Vec<_>>>()?);
            }
            faces.push(fg);
            let mut dg = Vec::new();
            for (op, &tg) in layout.degen_targets(g).iter().enumerate() {
                dg.push(keys[g].iter().map(|k| lookup(tg, &degen(g, op, k))).collect::<Result<Vec<_>>>()?);
            }
            degens.push(dg);
        }
        let sizes = keys.iter().map(Vec::len).collect();
        Self::from_tables_unchecked(layout, sizes, faces, degens)
    }

    pub fn empty(layout: Layout) -> Self {
        let gc = layout.grade_count();
        let faces = (0..gc).map(|g| vec![Vec::new(); layout.face_targets(g).len()]).collect();
        let degens = (0..gc).map(|g| vec![Vec::new(); layout.degen_targets(g).len()]).collect();
        Self::from_tables_unchecked(layout, vec![0; gc], faces, degens).expect("empty presheaf")
    }

    pub fn terminal(layout: Layout) -> Self {
        let gc = layout.grade_count();
        let faces = (0..gc).map(|g| vec![vec![0]; layout.face_targets(g).len()]).collect();
        let degens = (0..gc).map(|g| vec![vec![0]; layout.degen_targets(g).len()]).collect();
        Self::from_tables_unchecked(layout, vec![1; gc], faces, degens).expect("terminal presheaf")
    }

    pub fn witness(&self, g: usize, x: usize) -> Option<Witness> {
        self.witness[g][x]
    }

    pub fn is_nondegenerate(&self, g: usize, x: usize) -> bool {
        self.witness[g][x].is_none()
    }

    pub fn nondegenerate(&self, g: usize) -> Vec<usize> {
        (0..self.sizes[g]).filter(|&x| self.is_nondegenerate(g, x)).collect()
    }

    /// Checks the simplicial identities along each axis and, for bisimplicial
    /// layouts, that horizontal and vertical operators commute.
    pub fn check_identities(&self) -> Result<()> {
        let d = self.layout.truncation();
        match self.layout {
            Layout::Simplicial(_) => self.check_axis(Axis::Horizontal, |n| n, d),
            Layout::Bisimplicial(_) => {
                for m in 0..=d {
                    self.check_axis(Axis::Horizontal, |n| self.layout.grade(n, m), d)?;
                }
                for n in 0..=d {
                    self.check_axis(Axis::Vertical, |m| self.layout.grade(n, m), d)?;
                }
                self.check_commuting()
            }
        }
    }

    fn face(&self, g: usize, axis: Axis, i: usize, x: usize) -> usize {
        self.faces[g][self.layout.face_op(g, axis, i)][x]
    }

    fn degen(&self, g: usize, axis: Axis, j: usize, x: usize) -> usize {
        self.degens[g][self.layout.degen_op(g, axis, j)][x]
    }

    fn check_axis(&self, axis: Axis, grade: impl Fn(usize) -> usize, d: usize) -> Result<()> {
        let fail = |what: &str, n: usize, x: usize| {
            Err(Error::Validation(format!(
                "simplicial identity {what} fails at dimension {n}, simplex {x} ({axis:?})"
            )))
        };
        for n in 0..=d {
            let g = grade(n);
            for x in 0..self.sizes[g] {
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            let a = self.face(grade(n - 1), axis, i, self.face(g, axis, j, x));
                            let b = self.face(grade(n - 1), axis, j - 1, self.face(g, axis, i, x));
                            if a != b {
                                return fail("d_i d_j = d_{j-1} d_i", n, x);
                            }
                        }
                    }
                }
                if n < d {
                    let up = grade(n + 1);
                    for j in 0..=n {
                        let s = self.degen(g, axis, j, x);
                        // d_i s_j
                        for i in 0..=n + 1 {
                            let lhs = self.face(up, axis, i, s);
                            let rhs = if i == j || i == j + 1 {
                                x
                            } else if i < j {
                                self.degen(grade(n - 1), axis, j - 1, self.face(g, axis, i, x))
                            } else {
                                self.degen(grade(n - 1), axis, j, self.face(g, axis, i - 1, x))
                            };
                            if lhs != rhs {
                                return fail("d_i s_j", n, x);
                            }
                        }
                        // s_i s_j = s_{j+1} s_i, i <= j
                        if n + 1 < d {
                            for i in 0..=j {
                                let a = self.degen(up, axis, i, s);
                                let b = self.degen(up, axis, j + 1, self.degen(g, axis, i, x));
                                if a != b {
                                    return fail("s_i s_j = s_{j+1} s_i", n, x);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commuting(&self) -> Result<()> {
        let l = self.layout;
        let d = l.truncation();
        for n in 0..=d {
            for m in 0..=d {
                let g = l.grade(n, m);
                for x in 0..self.sizes[g] {
                    let mut h_ops: Vec<(bool, usize)> = Vec::new();
                    if n >= 1 {
                        h_ops.extend((0..=n).map(|i| (true, i)));
                    }
                    if n < d {
                        h_ops.extend((0..=n).map(|j| (false, j)));
                    }
                    let mut v_ops: Vec<(bool, usize)> = Vec::new();
                    if m >= 1 {
                        v_ops.extend((0..=m).map(|i| (true, i)));
                    }
                    if m < d {
                        v_ops.extend((0..=m).map(|j| (false, j)));
                    }
                    for &(hf, hi) in &h_ops {
                        for &(vf, vi) in &v_ops {
                            let n2 = if hf { n - 1 } else { n + 1 };
                            let m2 = if vf { m - 1 } else { m + 1 };
                            let apply_h = |gg: usize, y: usize| {
                                if hf {
                                    self.face(gg, Axis::Horizontal, hi, y)
                                } else {
                                    self.degen(gg, Axis::Horizontal, hi, y)
                                }
                            };
                            let apply_v = |gg: usize, y: usize| {
                                if vf {
                                    self.face(gg, Axis::Vertical, vi, y)
                                } else {
                                    self.degen(gg, Axis::Vertical, vi, y)
                                }
                            };
                            let hv = apply_h(l.grade(n, m2), apply_v(g, x));
                            let vh = apply_v(l.grade(n2, m), apply_h(g, x));
                            if hv != vh {
                                return Err(Error::Validation(format!(
                                    "horizontal and vertical operators do not commute at ({n},{m}), simplex {x}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity_map(&self) -> Components {
        self.sizes.iter().map(|&s| (0..s).collect()).collect()
    }

    /// Checks that `comps` is a natural transformation `self -> target`.
    pub fn check_natural(&self, target: &Presheaf, comps: &Components) -> Result<()> {
        if self.layout != target.layout {
            return Err(Error::TruncationMismatch {
                left: self.layout.truncation(),
                right: target.layout.truncation(),
            });
        }
        if comps.len() != self.sizes.len() {
            return Err(Error::Validation("wrong number of components".into()));
        }
        for g in 0..self.sizes.len() {
            if comps[g].len() != self.sizes[g] {
                return Err(Error::Validation(format!(
                    "component {:?} has {} entries, expected {}",
                    self.layout.bigrade(g),
                    comps[g].len(),
                    self.sizes[g]
                )));
            }
            if comps[g].iter().any(|&v| v >= target.sizes[g]) {
                return Err(Error::Validation(format!(
                    "component {:?} leaves the target",
                    self.layout.bigrade(g)
                )));
            }
        }
        for g in 0..self.sizes.len() {
            for (op, &tg) in self.layout.face_targets(g).iter().enumerate() {
                for x in 0..self.sizes[g] {
                    if comps[tg][self.faces[g][op][x]] != target.faces[g][op][comps[g][x]] {
                        return Err(Error::Validation(format!(
                            "not natural for face {op} at grade {:?}",
                            self.layout.bigrade(g)
                        )));
                    }
                }
            }
            for (op, &tg) in self.layout.degen_targets(g).iter().enumerate() {
                for x in 0..self.sizes[g] {
                    if comps[tg][self.degens[g][op][x]] != target.degens[g][op][comps[g][x]] {
                        return Err(Error::Validation(format!(
                            "not natural for degeneracy {op} at grade {:?}",
                            self.layout.bigrade(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Enumerates natural transformations `self -> target`, sorted
    /// lexicographically by their components.
    ///
    /// `fixed` pins the value of individual simplices. A map is determined by
    /// its values on nondegenerate simplices subject to face compatibility.
    pub fn enumerate_maps(
        &self,
        target: &Presheaf,
        fixed: &dyn Fn(usize, usize) -> Option<usize>,
        limit: Option<usize>,
    ) -> Result<Vec<Components>> {
        let mut out = Vec::new();
        self.search_maps(target, fixed, |c| {
            out.push(c.clone());
            true
        })?;
        out.sort_unstable();
        if let Some(l) = limit {
            out.truncate(l);
        }
        Ok(out)
    }

    /// The order in which [`Presheaf::search_maps`] assigns simplices: each
    /// simplex as soon as everything it depends on (its faces, or the source
    /// of its degeneracy) is assigned, so that constraints prune early.
    fn search_order(&self) -> Vec<(usize, usize)> {
        let gc = self.sizes.len();
        let mut pending: Vec<Vec<usize>> = self.sizes.iter().map(|&s| vec![0; s]).collect();
        let mut dependents: Vec<Vec<Vec<(usize, usize)>>> = self.sizes.iter().map(|&s| vec![Vec::new(); s]).collect();
        for g in 0..gc {
            for x in 0..self.sizes[g] {
                let mut deps: Vec<(usize, usize)> = match self.witness(g, x) {
                    Some(w) => vec![(w.source, w.simplex)],
                    None => {
                        let targets = self.layout.face_targets(g);
                        self.faces[g].iter().enumerate().map(|(op, t)| (targets[op], t[x])).collect()
                    }
                };
                deps.sort_unstable();
                deps.dedup();
                pending[g][x] = deps.len();
                for (h, y) in deps {
                    dependents[h][y].push((g, x));
                }
            }
        }
        let mut placed: Vec<Vec<bool>> = self.sizes.iter().map(|&s| vec![false; s]).collect();
        let mut order = Vec::with_capacity(self.sizes.iter().sum());
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for g in self.layout.order() {
            for x in 0..self.sizes[g] {
                if placed[g][x] {
                    continue;
                }
                debug_assert_eq!(pending[g][x], 0);
                placed[g][x] = true;
                stack.push((g, x));
                while let Some((h, y)) = stack.pop() {
                    order.push((h, y));
                    for &(k, z) in dependents[h][y].iter().rev() {
                        pending[k][z] -= 1;
                        if pending[k][z] == 0 && !placed[k][z] {
                            placed[k][z] = true;
                            stack.push((k, z));
                        }
                    }
                }
            }
        }
        order
    }

    /// Depth-first search over maps; `visit` returns `false` to stop. Maps
    /// are visited in no particular order.
    pub fn search_maps(
        &self,
        target: &Presheaf,
        fixed: &dyn Fn(usize, usize) -> Option<usize>,
        mut visit: impl FnMut(&Components) -> bool,
    ) -> Result<()> {
        if self.layout != target.layout {
            return Err(Error::TruncationMismatch {
                left: self.layout.truncation(),
                right: target.layout.truncation(),
            });
        }
        let positions = self.search_order();
        // index target simplices by their face tuples
        let mut by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>> = Vec::with_capacity(target.sizes.len());
        for g in 0..target.sizes.len() {
            let mut idx: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for z in 0..target.sizes[g] {
                let key: Vec<usize> = target.faces[g].iter().map(|t| t[z]).collect();
                idx.entry(key).or_default().push(z);
            }
            by_faces.push(idx);
        }
        let mut values: Components = self.sizes.iter().map(|&s| vec![usize::MAX; s]).collect();
        let mut cands: Vec<Vec<usize>> = vec![Vec::new(); positions.len()];
        let mut cursor: Vec<usize> = vec![0; positions.len()];
        let empty: Vec<usize> = Vec::new();

        let candidates = |values: &Components, g: usize, x: usize| -> Vec<usize> {
            let pinned = fixed(g, x);
            if let Some(w) = self.witness(g, x) {
                let v = target.degens[w.source][w.op][values[w.source][w.simplex]];
                return match pinned {
                    Some(p) if p != v => Vec::new(),
                    _ => vec![v],
                };
            }
            let key: Vec<usize> = self.faces[g]
                .iter()
                .enumerate()
                .map(|(op, t)| values[self.layout.face_targets(g)[op]][t[x]])
                .collect();
            let list = by_faces[g].get(&key).unwrap_or(&empty);
            match pinned {
                Some(p) => list.iter().copied().filter(|&z| z == p).collect(),
                None => list.clone(),
            }
        };

        if positions.is_empty() {
            visit(&values);
            return Ok(());
        }
        let mut depth = 0usize;
        cands[0] = candidates(&values, positions[0].0, positions[0].1);
        cursor[0] = 0;
        loop {
            let (g, x) = positions[depth];
            if cursor[depth] < cands[depth].len() {
                values[g][x] = cands[depth][cursor[depth]];
                cursor[depth] += 1;
                if depth + 1 == positions.len() {
                    if !visit(&values) {
                        return Ok(());
                    }
                } else {
                    depth += 1;
                    let (g2, x2) = positions[depth];
                    cands[depth] = candidates(&values, g2, x2);
                    cursor[depth] = 0;
                }
            } else {
                values[g][x] = usize::MAX;
                if depth == 0 {
                    return Ok(());
                }
                depth -= 1;
            }
        }
    }

    /// Dimensionwise disjoint union; returns the coproduct and the injections.
    pub fn coproduct(parts: &[&Presheaf], layout: Layout) -> (Presheaf, Vec<Components>) {
        let gc = layout.grade_count();
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        let mut sizes = vec![0usize; gc];
        for p in parts {
            assert_eq!(p.layout, layout);
            offsets.push(sizes.clone());
            for g in 0..gc {
                sizes[g] += p.sizes[g];
            }
        }
        let mut faces = Vec::with_capacity(gc);
        let mut degens = Vec::with_capacity(gc);
        for g in 0..gc {
            let ft = layout.face_targets(g);
            faces.push(
                ft.iter()
                    .enumerate()
                    .map(|(op, &tg)| {
                        parts
                            .iter()
                            .zip(&offsets)
                            .flat_map(|(p, off)| p.faces[g][op].iter().map(move |&v| v + off[tg]))
                            .collect()
                    })
                    .collect(),
            );
            let dt = layout.degen_targets(g);
            degens.push(
                dt.iter()
                    .enumerate()
                    .map(|(op, &tg)| {
                        parts
                            .iter()
                            .zip(&offsets)
                            .flat_map(|(p, off)| p.degens[g][op].iter().map(move |&v| v + off[tg]))
                            .collect()
                    })
                    .collect(),
            );
        }
        let injections = parts
            .iter()
            .zip(&offsets)
            .map(|(p, off)| (0..gc).map(|g| (0..p.sizes[g]).map(|x| x + off[g]).collect()).collect())
            .collect();
        let coprod = Presheaf::from_tables_unchecked(layout, sizes, faces, degens).expect("coproduct");
        (coprod, injections)
    }

    /// Pushout of `left <- apex -> right` along `f` and `g`. Classes are
    /// numbered by their smallest representative, `left` before `right`.
    pub fn pushout(
        apex: &Presheaf,
        left: &Presheaf,
        right: &Presheaf,
        f: &Components,
        g: &Components,
    ) -> (Presheaf, Components, Components) {
        let layout = apex.layout;
        let gc = layout.grade_count();
        let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(gc);
        let mut sizes = Vec::with_capacity(gc);
        for gr in 0..gc {
            let nl = left.sizes[gr];
            let n = nl + right.sizes[gr];
            let mut uf = UnionFind::new(n);
            for a in 0..apex.sizes[gr] {
                uf.union(f[gr][a], nl + g[gr][a]);
            }
            let mut root_id: HashMap<usize, usize> = HashMap::new();
            let mut cls = Vec::with_capacity(n);
            for e in 0..n {
                let r = uf.find(e);
                let next = root_id.len();
                cls.push(*root_id.entry(r).or_insert(next));
            }
            sizes.push(root_id.len());
            class_of.push(cls);
        }
        let rep = |gr: usize| -> Vec<usize> {
            let mut reps = vec![usize::MAX; sizes[gr]];
            for (e, &c) in class_of[gr].iter().enumerate() {
                if reps[c] == usize::MAX {
                    reps[c] = e;
                }
            }
            reps
        };
        let act = |tables_l: &Vec<Vec<Vec<usize>>>, tables_r: &Vec<Vec<Vec<usize>>>, gr: usize, op: usize, tg: usize, e: usize| {
            let nl = left.sizes[gr];
            if e < nl {
                class_of[tg][tables_l[gr][op][e]]
            } else {
                class_of[tg][left.sizes[tg] + tables_r[gr][op][e - nl]]
            }
        };
        let mut faces = Vec::with_capacity(gc);
        let mut degens = Vec::with_capacity(gc);
        for gr in 0..gc {
            let reps = rep(gr);
            faces.push(
                layout
                    .face_targets(gr)
                    .iter()
                    .enumerate()
                    .map(|(op, &tg)| reps.iter().map(|&e| act(&left.faces, &right.faces, gr, op, tg, e)).collect())
                    .collect(),
            );
            degens.push(
                layout
                    .degen_targets(gr)
                    .iter()
                    .enumerate()
                    .map(|(op, &tg)| reps.iter().map(|&e| act(&left.degens, &right.degens, gr, op, tg, e)).collect())
                    .collect(),
            );
        }
        let into_left = (0..gc).map(|gr| class_of[gr][..left.sizes[gr]].to_vec()).collect();
        let into_right = (0..gc).map(|gr| class_of[gr][left.sizes[gr]..].to_vec()).collect();
        let p = Presheaf::from_tables_unchecked(layout, sizes, faces, degens).expect("pushout");
        (p, into_left, into_right)
    }

    /// Smallest sub-presheaf containing the marked simplices.
    pub fn closure(&self, mut members: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
        // faces first (downward), then degeneracies (upward)
        let order = self.layout.order();
        for &g in order.iter().rev() {
            for x in 0..self.sizes[g] {
                if members[g][x] {
                    for (op, &tg) in self.layout.face_targets(g).iter().enumerate() {
                        members[tg][self.faces[g][op][x]] = true;
                    }
                }
            }
        }
        for &g in &order {
            for x in 0..self.sizes[g] {
                if members[g][x] {
                    for (op, &tg) in self.layout.degen_targets(g).iter().enumerate() {
                        members[tg][self.degens[g][op][x]] = true;
                    }
                }
            }
        }
        members
    }

    pub fn is_closed(&self, members: &[Vec<bool>]) -> bool {
        (0..self.sizes.len()).all(|g| {
            (0..self.sizes[g]).all(|x| {
                !members[g][x]
                    || (self.layout.face_targets(g).iter().enumerate().all(|(op, &tg)| members[tg][self.faces[g][op][x]])
                        && self.layout.degen_targets(g).iter().enumerate().all(|(op, &tg)| members[tg][self.degens[g][op][x]]))
            })
        })
    }

    /// Realizes a closed membership predicate as a presheaf plus its inclusion.
    pub fn restrict(&self, members: &[Vec<bool>]) -> (Presheaf, Components) {
        let gc = self.sizes.len();
        let incl: Components = (0..gc).map(|g| (0..self.sizes[g]).filter(|&x| members[g][x]).collect()).collect();
        let pos: Vec<HashMap<usize, usize>> =
            incl.iter().map(|v| v.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        let faces = (0..gc)
            .map(|g| {
                self.layout
                    .face_targets(g)
                    .iter()
                    .enumerate()
                    .map(|(op, &tg)| incl[g].iter().map(|&x| pos[tg][&self.faces[g][op][x]]).collect())
                    .collect()
            })
            .collect();
        let degens = (0..gc)
            .map(|g| {
                self.layout
                    .degen_targets(g)
                    .iter()
                    .enumerate()
                    .map(|(op, &tg)| incl[g].iter().map(|&x| pos[tg][&self.degens[g][op][x]]).collect())
                    .collect()
            })
            .collect();
        let sizes = incl.iter().map(Vec::len).collect();
        let p = Presheaf::from_tables_unchecked(self.layout, sizes, faces, degens).expect("sub-presheaf");
        (p, incl)
    }

    pub fn image(&self, source_sizes: &[usize], comps: &Components) -> Vec<Vec<bool>> {
        let mut m: Vec<Vec<bool>> = self.sizes.iter().map(|&s| vec![false; s]).collect();
        for g in 0..source_sizes.len() {
            for &v in &comps[g] {
                m[g][v] = true;
            }
        }
        m
    }
}

pub(crate) fn compose(outer: &Components, inner: &Components) -> Components {
    inner
        .iter()
        .zip(outer)
        .map(|(i, o)| i.iter().map(|&x| o[x]).collect())
        .collect()
}

pub(crate) fn is_injective(comps: &Components, target_sizes: &[usize]) -> bool {
    comps.iter().zip(target_sizes).all(|(c, &n)| {
        let mut seen = vec![false; n];
        c.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    })
}

pub(crate) fn is_bijective(comps: &Components, target_sizes: &[usize]) -> bool {
    comps.iter().zip(target_sizes).all(|(c, &n)| c.len() == n) && is_injective(comps, target_sizes)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so class order is stable.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
