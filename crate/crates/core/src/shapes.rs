//! Named shapes: simplices, boundaries, horns, spines, cones, the spine-cone
//! union, and the conical nerve `IΔⁿ` of the free groupoid on `[n]` together
//! with its subobjects `I[Sp₂]`, `I[C₂]` and the order-three automorphism of
//! `IΔ²`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::OrdinalMap;
use crate::sset::{SMap, SSet, Subcomplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Simplex,
    Boundary,
    Horn,
    Spine,
    Cone,
    Spc,
    Igroupoid,
    #[serde(rename = "isp2")]
    ISp2,
    #[serde(rename = "ic2")]
    IC2,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 9] = [
        ShapeKind::Simplex,
        ShapeKind::Boundary,
        ShapeKind::Horn,
        ShapeKind::Spine,
        ShapeKind::Cone,
        ShapeKind::Spc,
        ShapeKind::Igroupoid,
        ShapeKind::ISp2,
        ShapeKind::IC2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Simplex => "simplex",
            ShapeKind::Boundary => "boundary",
            ShapeKind::Horn => "horn",
            ShapeKind::Spine => "spine",
            ShapeKind::Cone => "cone",
            ShapeKind::Spc => "spc",
            ShapeKind::Igroupoid => "igroupoid",
            ShapeKind::ISp2 => "isp2",
            ShapeKind::IC2 => "ic2",
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShapeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown shape kind `{s}`")))
    }
}

/// A realized shape with its canonical inclusion into the ambient simplex
/// (or into `IΔ²` for `isp2`/`ic2`).
#[derive(Clone, Debug)]
pub struct ShapeHandle {
    pub kind: ShapeKind,
    pub n: usize,
    pub i: Option<usize>,
    pub realized: Arc<SSet>,
    pub inclusion: Option<SMap>,
}

/// `Δⁿ` truncated at `d`; `m`-simplices are the monotone sequences in `[n]`.
pub fn standard_simplex(n: usize, d: usize) -> Arc<SSet> {
    let seqs = (0..=d)
        .map(|m| OrdinalMap::all(m, n).into_iter().map(|f| f.values().to_vec()).collect())
        .collect();
    Arc::new(SSet::from_sequences(d, seqs).expect("standard simplex"))
}

/// `IΔⁿ` truncated at `d`; `m`-simplices are all sequences in `[n]^{m+1}`.
pub fn igroupoid_nerve(n: usize, d: usize) -> Arc<SSet> {
    Arc::new(SSet::from_sequences(d, (0..=d).map(|m| all_sequences(n, m + 1)).collect()).expect("conical nerve"))
}

/// All sequences of the given length over `[n]`, lexicographically.
pub fn all_sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// Subcomplex of a sequence-labelled ambient consisting of the simplices
/// whose vertex set lies inside one of `vertex_sets`.
pub fn spanned_by(ambient: Arc<SSet>, vertex_sets: &[Vec<usize>]) -> Subcomplex {
    let labels = ambient.labels().expect("sequence-labelled ambient").clone();
    let members = labels
        .iter()
        .map(|dim| {
            dim.iter()
                .map(|seq| vertex_sets.iter().any(|vs| seq.iter().all(|v| vs.contains(v))))
                .collect()
        })
        .collect();
    Subcomplex::from_members(ambient, members).expect("spanned subcomplexes are closed")
}

/// Vertex sets generating a shape inside `Δⁿ`.
pub fn generating_faces(kind: ShapeKind, n: usize, i: Option<usize>) -> Result<Vec<Vec<usize>>> {
    let all: Vec<usize> = (0..=n).collect();
    let without = |k: usize| all.iter().copied().filter(|&v| v != k).collect::<Vec<_>>();
    Ok(match kind {
        ShapeKind::Simplex => vec![all],
        ShapeKind::Boundary => (0..=n).map(without).filter(|f| !f.is_empty()).collect(),
        ShapeKind::Horn => {
            let i = i.ok_or_else(|| Error::OutOfRange("horn needs an index i".into()))?;
            if n < 1 || i > n {
                return Err(Error::OutOfRange(format!("horn Λ^{n}_{i} needs n >= 1 and 0 <= i <= n")));
            }
            (0..=n).filter(|&k| k != i).map(without).collect()
        }
        ShapeKind::Spine => {
            if n == 0 {
                vec![vec![0]]
            } else {
                (0..n).map(|k| vec![k, k + 1]).collect()
            }
        }
        ShapeKind::Cone => {
            if n == 0 {
                vec![vec![0]]
            } else {
                (1..=n).map(|k| vec![0, k]).collect()
            }
        }
        ShapeKind::Spc => {
            if n < 2 {
                return Err(Error::OutOfRange(format!("SpC_n needs n >= 2, got {n}")));
            }
            (1..n).map(|k| vec![0, k, k + 1]).collect()
        }
        ShapeKind::Igroupoid | ShapeKind::ISp2 | ShapeKind::IC2 => {
            return Err(Error::Validation(format!("{kind} is not a subcomplex of a simplex")))
        }
    })
}

/// Realizes a named shape at truncation `d`.
pub fn make_shape(kind: ShapeKind, n: usize, i: Option<usize>, d: usize) -> Result<ShapeHandle> {
    if kind != ShapeKind::Horn && i.is_some() {
        return Err(Error::OutOfRange(format!("{kind} takes no index")));
    }
    match kind {
        ShapeKind::Igroupoid => Ok(ShapeHandle { kind, n, i, realized: igroupoid_nerve(n, d), inclusion: None }),
        ShapeKind::ISp2 | ShapeKind::IC2 => {
            if n != 2 {
                return Err(Error::OutOfRange(format!("{kind} is only defined for n = 2")));
            }
            let sub = if kind == ShapeKind::ISp2 { igroupoid_spine2(d) } else { igroupoid_cone2(d) };
            let (realized, inclusion) = sub.realize();
            Ok(ShapeHandle { kind, n, i, realized, inclusion: Some(inclusion) })
        }
        ShapeKind::Simplex => Ok(ShapeHandle { kind, n, i, realized: standard_simplex(n, d), inclusion: None }),
        _ => {
            let faces = generating_faces(kind, n, i)?;
            let sub = spanned_by(standard_simplex(n, d), &faces);
            let (realized, inclusion) = sub.realize();
            Ok(ShapeHandle { kind, n, i, realized, inclusion: Some(inclusion) })
        }
    }
}

/// `I[Sp₂] ⊂ IΔ²`: sequences inside `{0,1}` or inside `{1,2}`.
pub fn igroupoid_spine2(d: usize) -> Subcomplex {
    spanned_by(igroupoid_nerve(2, d), &[vec![0, 1], vec![1, 2]])
}

/// `I[C₂] ⊂ IΔ²`: sequences inside `{0,1}` or inside `{0,2}`.
pub fn igroupoid_cone2(d: usize) -> Subcomplex {
    spanned_by(igroupoid_nerve(2, d), &[vec![0, 1], vec![0, 2]])
}

/// The canonical embedding `Δⁿ -> IΔⁿ` onto the monotone sequences.
pub fn canonical_embedding(n: usize, d: usize) -> SMap {
    let simplex = standard_simplex(n, d);
    let nerve = igroupoid_nerve(n, d);
    relabel_map(&simplex, &nerve, |s| s.to_vec())
}

/// The monotone-sequence subcomplex of `IΔⁿ`.
pub fn monotone_part(nerve: &Arc<SSet>) -> Subcomplex {
    let labels = nerve.labels().expect("conical nerve is labelled");
    let members = labels.iter().map(|dim| dim.iter().map(|s| s.windows(2).all(|w| w[0] <= w[1])).collect()).collect();
    Subcomplex::from_members(nerve.clone(), members).expect("monotone sequences form a subcomplex")
}

/// A map between sequence-labelled simplicial sets given on labels.
pub(crate) fn relabel_map(source: &Arc<SSet>, target: &Arc<SSet>, f: impl Fn(&[usize]) -> Vec<usize>) -> SMap {
    let src = source.labels().expect("labelled source");
    let comps = src
        .iter()
        .map(|dim| dim.iter().map(|s| target.find_label(&f(s)).expect("image label exists")).collect())
        .collect();
    SMap::new(source.clone(), target.clone(), comps).expect("label map is simplicial")
}

/// An `m`-simplex of `IΔⁿ` as an object sequence `(c_0, ..., c_m)`.
///
/// The cone view lists the legs `h_i: c_0 -> c_i`; in the codiscrete groupoid
/// an arrow is just its (source, target) pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConicalSimplex(pub Vec<usize>);

/// An arrow `source -> target` of the codiscrete groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidArrow {
    pub source: usize,
    pub target: usize,
}

impl GroupoidArrow {
    /// `self ∘ first`.
    pub fn after(self, first: GroupoidArrow) -> GroupoidArrow {
        debug_assert_eq!(first.target, self.source);
        GroupoidArrow { source: first.source, target: self.target }
    }

    pub fn inverse(self) -> GroupoidArrow {
        GroupoidArrow { source: self.target, target: self.source }
    }
}

impl ConicalSimplex {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn apex(&self) -> usize {
        self.0[0]
    }

    /// Legs `h_1, ..., h_m` of the cone.
    pub fn legs(&self) -> Vec<GroupoidArrow> {
        self.0[1..].iter().map(|&c| GroupoidArrow { source: self.0[0], target: c }).collect()
    }

    pub fn from_cone(apex: usize, legs: &[GroupoidArrow]) -> Self {
        let mut seq = vec![apex];
        for h in legs {
            debug_assert_eq!(h.source, apex);
            seq.push(h.target);
        }
        ConicalSimplex(seq)
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

/// `d_j` on the cone view: for `j > 0` drop the leg `h_j`; for `j = 0` re-root
/// at `c_1` with legs `h_i ∘ h_1⁻¹`.
pub fn conical_face(s: &ConicalSimplex, j: usize) -> Result<ConicalSimplex> {
    let m = s.dim();
    if m == 0 || j > m {
        return Err(Error::OutOfRange(format!("no face d_{j} of a {m}-simplex")));
    }
    let legs = s.legs();
    if j > 0 {
        let kept: Vec<GroupoidArrow> = legs.iter().enumerate().filter(|(i, _)| i + 1 != j).map(|(_, h)| *h).collect();
        Ok(ConicalSimplex::from_cone(s.apex(), &kept))
    } else {
        let h1 = legs[0];
        let rerooted: Vec<GroupoidArrow> = legs[1..].iter().map(|h| h.after(h1.inverse())).collect();
        Ok(ConicalSimplex::from_cone(h1.target, &rerooted))
    }
}

/// `s_j` on the cone view: `s_0` prepends the identity leg, `s_j` for `j > 0`
/// repeats `h_j`.
pub fn conical_degeneracy(s: &ConicalSimplex, j: usize) -> Result<ConicalSimplex> {
    let m = s.dim();
    if j > m {
        return Err(Error::OutOfRange(format!("no degeneracy s_{j} of a {m}-simplex")));
    }
    let mut legs = s.legs();
    if j == 0 {
        legs.insert(0, GroupoidArrow { source: s.apex(), target: s.apex() });
    } else {
        legs.insert(j, legs[j - 1]);
    }
    Ok(ConicalSimplex::from_cone(s.apex(), &legs))
}

/// The object permutation `0 ↦ 2, 1 ↦ 0, 2 ↦ 1` of `I[2]`.
pub const IDELTA2_ROTATION: [usize; 3] = [2, 0, 1];

/// Automorphism of `IΔ²` induced by [`IDELTA2_ROTATION`]; on generators it
/// sends `f: 0 -> 1` to `(gf)⁻¹` and `g: 1 -> 2` to `f`.
pub fn idelta2_automorphism(d: usize) -> SMap {
    let nerve = igroupoid_nerve(2, d);
    relabel_map(&nerve, &nerve, |s| s.iter().map(|&c| IDELTA2_ROTATION[c]).collect())
}
