//! Enumeration of simplicial maps and brute-force lifting checks.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presheaf::{compose, Components, Presheaf};
use crate::sset::{SMap, SSet};

/// All maps `A -> X` together with the dimension up to which the answer is
/// insensitive to the truncation.
#[derive(Clone, Debug)]
pub struct MapEnumeration {
    pub maps: Vec<SMap>,
    pub trust_dimension: usize,
}

/// `D - top_dim(A)`, saturating at zero; the empty source is trusted to `D`.
pub fn trust_dimension(a: &SSet) -> usize {
    a.truncation().saturating_sub(a.top_dimension().unwrap_or(0))
}

/// Every simplicial map `A -> X`, in lexicographic order of values on
/// simplices.
pub fn enumerate_maps(a: &Arc<SSet>, x: &Arc<SSet>) -> Result<MapEnumeration> {
    let raw = a.inner.enumerate_maps(&x.inner, &|_, _| None, None)?;
    Ok(MapEnumeration {
        maps: raw.into_iter().map(|c| SMap::new_unchecked(a.clone(), x.clone(), c)).collect(),
        trust_dimension: trust_dimension(a),
    })
}

/// A commuting square `f ∘ top = bottom ∘ u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Square {
    pub top: Vec<Vec<usize>>,
    pub bottom: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftWitness {
    pub square: usize,
    pub diagonal: Vec<Vec<usize>>,
}

/// Outcome of a lifting check of `u` against `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    /// One entry per commuting square, in enumeration order: does it lift?
    pub liftable: Vec<bool>,
    /// Number of diagonals per square.
    pub lift_counts: Vec<usize>,
    pub holds: bool,
    pub witness: Option<LiftWitness>,
    pub counterexample: Option<Square>,
}

impl LiftingReport {
    pub fn square_count(&self) -> usize {
        self.liftable.len()
    }
}

pub(crate) struct Arrow<'a> {
    pub source: &'a Presheaf,
    pub target: &'a Presheaf,
    pub components: &'a Components,
}

/// Squares are enumerated by bottom map first, then top map, each in
/// lexicographic order; the first diagonal found is the witness.
pub(crate) fn lifting_raw(u: Arrow<'_>, f: Arrow<'_>) -> Result<LiftingReport> {
    let layouts = [u.source.layout, u.target.layout, f.source.layout, f.target.layout];
    if let Some(l) = layouts.iter().find(|l| **l != layouts[0]) {
        return Err(Error::TruncationMismatch { left: layouts[0].truncation(), right: l.truncation() });
    }
    let none = |_: usize, _: usize| None;
    let bottoms = u.target.enumerate_maps(f.target, &none, None)?;
    let tops = u.source.enumerate_maps(f.source, &none, None)?;
    let mut tops_by_image: HashMap<Components, Vec<usize>> = HashMap::new();
    for (i, a) in tops.iter().enumerate() {
        tops_by_image.entry(compose(f.components, a)).or_default().push(i);
    }
    let mut diagonals: HashMap<(Components, Components), Vec<Components>> = HashMap::new();
    for d in u.target.enumerate_maps(f.source, &none, None)? {
        let key = (compose(&d, u.components), compose(f.components, &d));
        diagonals.entry(key).or_default().push(d);
    }
    let mut report = LiftingReport {
        liftable: Vec::new(),
        lift_counts: Vec::new(),
        holds: true,
        witness: None,
        counterexample: None,
    };
    for b in &bottoms {
        let bu = compose(b, u.components);
        let Some(idxs) = tops_by_image.get(&bu) else { continue };
        for &i in idxs {
            let a = &tops[i];
            let lifts = diagonals.get(&(a.clone(), b.clone()));
            let count = lifts.map_or(0, Vec::len);
            let square = report.liftable.len();
            report.liftable.push(count > 0);
            report.lift_counts.push(count);
            if count > 0 {
                if report.witness.is_none() {
                    report.witness = Some(LiftWitness { square, diagonal: lifts.unwrap()[0].clone() });
                }
            } else {
                report.holds = false;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Square { top: a.clone(), bottom: b.clone() });
                }
            }
        }
    }
    Ok(report)
}

/// Does `u` have the left lifting property against `f`? Every commuting
/// square is enumerated and searched for diagonals.
pub fn lifting(u: &SMap, f: &SMap) -> Result<LiftingReport> {
    lifting_raw(
        Arrow { source: &u.source().inner, target: &u.target().inner, components: u.components() },
        Arrow { source: &f.source().inner, target: &f.target().inner, components: f.components() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::OrdinalMap;
    use crate::sset::Subcomplex;

    fn simplex(n: usize, d: usize) -> Arc<SSet> {
        let seqs = (0..=d).map(|m| OrdinalMap::all(m, n).into_iter().map(|f| f.values().to_vec()).collect()).collect();
        Arc::new(SSet::from_sequences(d, seqs).unwrap())
    }

    #[test]
    fn maps_from_point_are_vertices() {
        let p = simplex(0, 3);
        let t = simplex(2, 3);
        assert_eq!(enumerate_maps(&p, &t).unwrap().maps.len(), 3);
    }

    #[test]
    fn maps_interval_to_itself() {
        let i = simplex(1, 3);
        let e = enumerate_maps(&i, &i).unwrap();
        assert_eq!(e.maps.len(), 3);
        assert_eq!(e.trust_dimension, 2);
    }

    #[test]
    fn identity_lifts_against_anything() {
        let i = simplex(1, 2);
        let id = SMap::identity(i.clone());
        let pt = Arc::new(SSet::terminal(2));
        let bang = enumerate_maps(&i, &pt).unwrap().maps.remove(0);
        let r = lifting(&id, &bang).unwrap();
        assert!(r.holds);
        assert_eq!(r.square_count(), 3);
    }

    #[test]
    fn boundary_does_not_lift_against_interval_to_point() {
        let i = simplex(1, 2);
        let (bd, incl) = Subcomplex::generated_by_labels(i.clone(), &[vec![0], vec![1]]).unwrap().realize();
        let _ = bd;
        let pt = Arc::new(SSet::terminal(2));
        let bang = enumerate_maps(&i, &pt).unwrap().maps.remove(0);
        let r = lifting(&incl, &bang).unwrap();
        assert!(!r.holds);
        assert_eq!(r.square_count(), 4);
        assert_eq!(r.liftable, vec![true, true, false, true]);
    }
}
