//! Monotone maps between finite ordinals, the arrows of the simplex category.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly monotone map `[m] -> [n]`.
///
/// `values[i]` is the image of `i`; the domain is `[values.len() - 1]` and the
/// codomain is `[codomain]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    codomain: usize,
    values: Vec<usize>,
}

impl OrdinalMap {
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation("ordinal map needs a nonempty domain".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v > codomain) {
            return Err(Error::Validation(format!(
                "value {v} outside codomain [{codomain}]"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation(format!(
                "values {values:?} are not weakly increasing"
            )));
        }
        Ok(Self { codomain, values })
    }

    pub(crate) fn new_unchecked(codomain: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(codomain, values.clone()).is_ok());
        Self { codomain, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, (0..=n).collect())
    }

    /// The coface `d^i: [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Validation(format!("no coface d^{i} into [{n}]")));
        }
        Ok(Self::new_unchecked(n, (0..=n).filter(|&k| k != i).collect()))
    }

    /// The codegeneracy `s^j: [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::Validation(format!("no codegeneracy s^{j} onto [{n}]")));
        }
        Ok(Self::new_unchecked(
            n,
            (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect(),
        ))
    }

    /// `[1] -> [n]`, `0 |-> i`, `1 |-> i + 1`.
    pub fn essential_edge(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::Validation(format!("no essential edge {i} in [{n}]")));
        }
        Ok(Self::new_unchecked(n, vec![i, i + 1]))
    }

    /// `[1] -> [n]`, `0 |-> 0`, `1 |-> i`.
    pub fn initial_edge(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Validation(format!("no initial edge {i} in [{n}]")));
        }
        Ok(Self::new_unchecked(n, vec![0, i]))
    }

    /// The constant map `[m] -> [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self> {
        Self::new(n, vec![v; m + 1])
    }

    pub fn domain(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OrdinalMap) -> Result<Self> {
        if inner.codomain != self.domain() {
            return Err(Error::Validation(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.domain(),
                self.codomain,
                inner.domain(),
                inner.codomain
            )));
        }
        Ok(Self::new_unchecked(
            self.codomain,
            inner.values.iter().map(|&v| self.values[v]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.codomain
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    /// Unique factorization `self = mono ∘ epi` with `epi` surjective and `mono`
    /// injective.
    pub fn ez_factor(&self) -> (OrdinalMap, OrdinalMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let k = image.len() - 1;
        let mut epi = Vec::with_capacity(self.values.len());
        let mut rank = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 && v != self.values[i - 1] {
                rank += 1;
            }
            epi.push(rank);
        }
        (
            Self::new_unchecked(k, epi),
            Self::new_unchecked(self.codomain, image),
        )
    }

    /// Indices `i` such that `self` factors through the coface `d^i`, in
    /// decreasing order. Applying the faces `d_i` in this order realizes the
    /// action of an injective map.
    pub(crate) fn missing_values_desc(&self) -> Vec<usize> {
        (0..=self.codomain)
            .rev()
            .filter(|v| self.values.binary_search(v).is_err())
            .collect()
    }

    /// Enumerates every monotone map `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<OrdinalMap> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; m + 1];
        loop {
            out.push(Self::new_unchecked(n, cur.clone()));
            // next weakly increasing sequence
            let mut i = m as isize;
            while i >= 0 && cur[i as usize] == n {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            let v = cur[i as usize] + 1;
            for slot in cur.iter_mut().skip(i as usize) {
                *slot = v;
            }
        }
        out
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}](", self.domain(), self.codomain)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_monotone() {
        assert!(OrdinalMap::new(2, vec![1, 0]).is_err());
        assert!(OrdinalMap::new(1, vec![0, 2]).is_err());
        assert!(OrdinalMap::new(1, vec![]).is_err());
    }

    #[test]
    fn identity_factors_trivially() {
        let id = OrdinalMap::identity(2);
        let (e, m) = id.ez_factor();
        assert!(e.is_identity() && m.is_identity());
    }

    #[test]
    fn map_to_point_is_codegeneracy() {
        let f = OrdinalMap::new(0, vec![0, 0]).unwrap();
        let (e, m) = f.ez_factor();
        assert_eq!(e, OrdinalMap::codegeneracy(0, 0).unwrap());
        assert_eq!(m, OrdinalMap::identity(0));
    }

    #[test]
    fn factor_0022() {
        let f = OrdinalMap::new(2, vec![0, 0, 2, 2]).unwrap();
        let (e, m) = f.ez_factor();
        assert_eq!(e.values(), &[0, 0, 1, 1]);
        assert_eq!(m.values(), &[0, 2]);
        assert_eq!(m.compose(&e).unwrap(), f);
    }

    #[test]
    fn counts_match_binomials() {
        // monotone maps [m] -> [n] number C(m + n + 1, m + 1)
        assert_eq!(OrdinalMap::all(1, 1).len(), 3);
        assert_eq!(OrdinalMap::all(2, 2).len(), 10);
        assert_eq!(OrdinalMap::all(0, 3).len(), 4);
    }

    #[test]
    fn cosimplicial_identity() {
        // d^j d^i = d^i d^{j-1} for i < j
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = OrdinalMap::coface(n, j)
                        .unwrap()
                        .compose(&OrdinalMap::coface(n - 1, i).unwrap())
                        .unwrap();
                    let rhs = OrdinalMap::coface(n, i)
                        .unwrap()
                        .compose(&OrdinalMap::coface(n - 1, j - 1).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
