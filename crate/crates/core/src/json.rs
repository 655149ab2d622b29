//! JSON documents for simplicial sets, simplicial maps and bisimplicial sets.
//!
//! ```text
//! SSet   {"format": "bsegal.sset/1", "truncation": D, "simplices": [count per dim],
//!         "faces": {"n": [[d_0 x, ..., d_n x] per n-simplex x]},
//!         "degeneracies": {"n": [[s_0 x, ..., s_n x] per n-simplex x]},
//!         "labels"?: [[vertex sequence per simplex] per dim],
//!         "nondegenerate"?: [count per dim]}
//! SMap   {"format": "bsegal.smap/1", "source": SSet, "target": SSet,
//!         "components": [[image per simplex] per dim]}
//! BiSSet {"format": "bsegal.bisset/1", "truncation": D, "simplices": [[count at (n,m)]],
//!         "hfaces", "vfaces", "hdegeneracies", "vdegeneracies": [[[[ops per simplex]]]]}
//! ```
//!
//! Faces are listed for dimensions `1..=D`, degeneracies for `0..D`. The
//! `nondegenerate` field is informational and checked when present.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bisset::BiSSet;
use crate::error::{Error, Result};
use crate::sset::{SMap, SSet};

pub const SSET_FORMAT: &str = "bsegal.sset/1";
pub const SMAP_FORMAT: &str = "bsegal.smap/1";
pub const BISSET_FORMAT: &str = "bsegal.bisset/1";

type OpTable = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetDoc {
    pub format: String,
    pub truncation: usize,
    pub simplices: Vec<usize>,
    pub faces: BTreeMap<usize, OpTable>,
    pub degeneracies: BTreeMap<usize, OpTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<Vec<usize>>,
    /// Dimension up to which maps out of this object are exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trust_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SMapDoc {
    pub format: String,
    pub source: SSetDoc,
    pub target: SSetDoc,
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiSSetDoc {
    pub format: String,
    pub truncation: usize,
    pub simplices: Vec<Vec<usize>>,
    pub hfaces: Vec<Vec<OpTable>>,
    pub vfaces: Vec<Vec<OpTable>>,
    pub hdegeneracies: Vec<Vec<OpTable>>,
    pub vdegeneracies: Vec<Vec<OpTable>>,
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Validation(format!("format: expected {expected:?}, found {found:?}")));
    }
    Ok(())
}

/// Per-simplex rows `[op_0 x, op_1 x, ...]` from an operator-major table.
fn by_simplex(ops: &[Vec<usize>], count: usize) -> OpTable {
    (0..count).map(|x| ops.iter().map(|t| t[x]).collect()).collect()
}

/// Inverse of [`by_simplex`], with `arity` operators expected.
fn by_operator(rows: &OpTable, arity: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    if let Some(r) = rows.iter().find(|r| r.len() != arity) {
        return Err(Error::Validation(format!("{what}: expected {arity} entries per simplex, found {}", r.len())));
    }
    Ok((0..arity).map(|i| rows.iter().map(|r| r[i]).collect()).collect())
}

pub fn sset_to_doc(x: &SSet) -> SSetDoc {
    let d = x.truncation();
    let faces = (1..=d)
        .map(|n| (n, (0..x.count(n)).map(|s| (0..=n).map(|i| x.face(n, i, s)).collect()).collect()))
        .collect();
    let degeneracies = (0..d)
        .map(|n| (n, (0..x.count(n)).map(|s| (0..=n).map(|j| x.degeneracy(n, j, s)).collect()).collect()))
        .collect();
    SSetDoc {
        format: SSET_FORMAT.into(),
        truncation: d,
        simplices: x.counts(),
        faces,
        degeneracies,
        labels: x.labels().cloned(),
        nondegenerate: Some(x.nondegenerate_counts()),
        trust_dimension: None,
    }
}

pub fn sset_from_doc(doc: &SSetDoc) -> Result<SSet> {
    check_format(&doc.format, SSET_FORMAT)?;
    let d = doc.truncation;
    if doc.simplices.len() != d + 1 {
        return Err(Error::Validation(format!("simplices: expected {} counts, found {}", d + 1, doc.simplices.len())));
    }
    let table = |map: &BTreeMap<usize, OpTable>, n: usize, what: &str| -> Result<Vec<Vec<usize>>> {
        let rows = map.get(&n).ok_or_else(|| Error::Validation(format!("{what}: missing dimension {n}")))?;
        if rows.len() != doc.simplices[n] {
            return Err(Error::Validation(format!("{what}.{n}: expected {} simplices, found {}", doc.simplices[n], rows.len())));
        }
        by_operator(rows, n + 1, &format!("{what}.{n}"))
    };
    for (what, map, range) in [("faces", &doc.faces, 1..=d), ("degeneracies", &doc.degeneracies, 0..=d.saturating_sub(1))] {
        if let Some(k) = map.keys().find(|k| !range.contains(k) || (what == "degeneracies" && d == 0)) {
            return Err(Error::Validation(format!("{what}: unexpected dimension {k}")));
        }
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        faces.push(table(&doc.faces, n, "faces")?);
    }
    let mut degens = Vec::new();
    for n in 0..d {
        degens.push(table(&doc.degeneracies, n, "degeneracies")?);
    }
    degens.push(Vec::new());
    let plain = SSet::from_tables(d, doc.simplices.clone(), faces, degens)?;
    let x = match &doc.labels {
        None => plain,
        Some(labels) => {
            check_labels(&plain, labels)?;
            SSet::wrap(plain.inner, Some(labels.clone()))
        }
    };
    if let Some(nd) = &doc.nondegenerate {
        if *nd != x.nondegenerate_counts() {
            return Err(Error::Validation("nondegenerate: counts disagree with the tables".into()));
        }
    }
    Ok(x)
}

/// Labels must be distinct vertex sequences on which faces delete and
/// degeneracies repeat entries.
fn check_labels(x: &SSet, labels: &[Vec<Vec<usize>>]) -> Result<()> {
    let d = x.truncation();
    if labels.len() != d + 1 || (0..=d).any(|n| labels[n].len() != x.count(n)) {
        return Err(Error::Validation("labels: one label per simplex expected".into()));
    }
    for n in 0..=d {
        let mut seen = std::collections::HashSet::new();
        for (s, l) in labels[n].iter().enumerate() {
            if l.len() != n + 1 || !seen.insert(l) {
                return Err(Error::Validation(format!("labels.{n}.{s}: bad or repeated sequence")));
            }
            for i in 0..=n {
                if n > 0 {
                    let mut f = l.clone();
                    f.remove(i);
                    if labels[n - 1][x.face(n, i, s)] != f {
                        return Err(Error::Validation(format!("labels.{n}.{s}: inconsistent with face {i}")));
                    }
                }
                if n < d {
                    let mut g = l.clone();
                    g.insert(i, l[i]);
                    if labels[n + 1][x.degeneracy(n, i, s)] != g {
                        return Err(Error::Validation(format!("labels.{n}.{s}: inconsistent with degeneracy {i}")));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn smap_to_doc(f: &SMap) -> SMapDoc {
    SMapDoc {
        format: SMAP_FORMAT.into(),
        source: sset_to_doc(f.source()),
        target: sset_to_doc(f.target()),
        components: f.components().clone(),
    }
}

pub fn smap_from_doc(doc: &SMapDoc) -> Result<SMap> {
    check_format(&doc.format, SMAP_FORMAT)?;
    let s = Arc::new(sset_from_doc(&doc.source)?);
    let t = Arc::new(sset_from_doc(&doc.target)?);
    SMap::new(s, t, doc.components.clone())
}

pub fn bisset_to_doc(x: &BiSSet) -> BiSSetDoc {
    let d = x.truncation();
    let grid = |f: &dyn Fn(usize, usize) -> OpTable| -> Vec<Vec<OpTable>> {
        (0..=d).map(|n| (0..=d).map(|m| f(n, m)).collect()).collect()
    };
    BiSSetDoc {
        format: BISSET_FORMAT.into(),
        truncation: d,
        simplices: x.counts(),
        hfaces: grid(&|n, m| {
            let ops: Vec<Vec<usize>> = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| (0..x.count(n, m)).map(|s| x.hface(n, m, i, s)).collect()).collect()
            };
            by_simplex(&ops, x.count(n, m))
        }),
        vfaces: grid(&|n, m| {
            let ops: Vec<Vec<usize>> = if m == 0 {
                Vec::new()
            } else {
                (0..=m).map(|i| (0..x.count(n, m)).map(|s| x.vface(n, m, i, s)).collect()).collect()
            };
            by_simplex(&ops, x.count(n, m))
        }),
        hdegeneracies: grid(&|n, m| {
            let ops: Vec<Vec<usize>> = if n == d {
                Vec::new()
            } else {
                (0..=n).map(|j| (0..x.count(n, m)).map(|s| x.hdegeneracy(n, m, j, s)).collect()).collect()
            };
            by_simplex(&ops, x.count(n, m))
        }),
        vdegeneracies: grid(&|n, m| {
            let ops: Vec<Vec<usize>> = if m == d {
                Vec::new()
            } else {
                (0..=m).map(|j| (0..x.count(n, m)).map(|s| x.vdegeneracy(n, m, j, s)).collect()).collect()
            };
            by_simplex(&ops, x.count(n, m))
        }),
    }
}

pub fn bisset_from_doc(doc: &BiSSetDoc) -> Result<BiSSet> {
    check_format(&doc.format, BISSET_FORMAT)?;
    let d = doc.truncation;
    let square = |t: &Vec<Vec<OpTable>>| t.len() == d + 1 && t.iter().all(|r| r.len() == d + 1);
    if doc.simplices.len() != d + 1
        || doc.simplices.iter().any(|r| r.len() != d + 1)
        || ![&doc.hfaces, &doc.vfaces, &doc.hdegeneracies, &doc.vdegeneracies].into_iter().all(square)
    {
        return Err(Error::Validation(format!("bisimplicial tables must be ({0}+1)x({0}+1)", d)));
    }
    let convert = |t: &Vec<Vec<OpTable>>, what: &str, arity: &dyn Fn(usize, usize) -> usize| {
        (0..=d)
            .map(|n| {
                (0..=d)
                    .map(|m| {
                        let rows = &t[n][m];
                        if rows.len() != doc.simplices[n][m] {
                            return Err(Error::Validation(format!("{what}.{n}.{m}: wrong number of simplices")));
                        }
                        let k = arity(n, m);
                        if k == 0 {
                            if rows.iter().any(|r| !r.is_empty()) {
                                return Err(Error::Validation(format!("{what}.{n}.{m}: no operators expected")));
                            }
                            return Ok(Vec::new());
                        }
                        by_operator(rows, k, &format!("{what}.{n}.{m}"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    };
    BiSSet::from_tables(
        d,
        doc.simplices.clone(),
        convert(&doc.hfaces, "hfaces", &|n, _| if n == 0 { 0 } else { n + 1 })?,
        convert(&doc.vfaces, "vfaces", &|_, m| if m == 0 { 0 } else { m + 1 })?,
        convert(&doc.hdegeneracies, "hdegeneracies", &|n, _| if n == d { 0 } else { n + 1 })?,
        convert(&doc.vdegeneracies, "vdegeneracies", &|_, m| if m == d { 0 } else { m + 1 })?,
    )
}

/// Parses JSON text, reporting line and column on syntax or schema errors.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::box_product;
    use crate::shapes::{igroupoid_nerve, make_shape, standard_simplex, ShapeKind};

    #[test]
    fn sset_round_trip() {
        for x in [standard_simplex(2, 3), igroupoid_nerve(1, 3), make_shape(ShapeKind::Boundary, 2, None, 2).unwrap().realized] {
            let doc = sset_to_doc(&x);
            let text = serde_json::to_string(&doc).unwrap();
            let back = sset_from_doc(&parse(&text).unwrap()).unwrap();
            assert_eq!(back, *x);
        }
    }

    #[test]
    fn bisset_round_trip() {
        let x = box_product(&standard_simplex(1, 2), &igroupoid_nerve(1, 2)).unwrap();
        let doc = bisset_to_doc(&x);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(bisset_from_doc(&parse(&text).unwrap()).unwrap(), x);
    }

    #[test]
    fn smap_round_trip() {
        let h = make_shape(ShapeKind::Horn, 2, Some(0), 2).unwrap().inclusion.unwrap();
        let back = smap_from_doc(&smap_to_doc(&h)).unwrap();
        assert!(back.same_as(&h));
    }

    #[test]
    fn broken_identity_is_rejected() {
        let mut doc = sset_to_doc(&standard_simplex(1, 2));
        doc.faces.get_mut(&1).unwrap()[2] = vec![0, 0];
        doc.nondegenerate = None;
        assert!(sset_from_doc(&doc).is_err());
    }

    #[test]
    fn syntax_error_has_location() {
        let e = parse::<SSetDoc>("{\"format\": }").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }
}
