//! Nerves of finite categories as level-discrete bisimplicial sets, and the
//! strict Segal, Bousfield, completeness and core diagnostics on them.
//!
//! Weak equivalences between the discrete objects here are read as
//! bijections and `π₀`-equality as equality.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bisset::{col0, const_cols, const_rows, structure_maps_bijective, transpose, BiSSet, Direction};
use crate::category::{core, enumerate_functors, FinCat, FinGroupoid, Functor};
use crate::error::{Error, Result};
use crate::maps::{enumerate_maps, trust_dimension};
use crate::ordinal::OrdinalMap;
use crate::presheaf::{self, Components, Layout, Presheaf};
use crate::shapes::{canonical_embedding, igroupoid_nerve, make_shape, standard_simplex, ShapeKind};
use crate::sset::{SMap, SSet, Subcomplex};

/// The nerve of a finite category. `simplices[0][x] = [x]`; for `m >= 1`
/// `simplices[m][k]` is a composable tuple `(f_1, ..., f_m)` of arrow
/// indices with `cod f_i = dom f_{i+1}`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: Arc<SSet>,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    /// The arrow carried by a 1-simplex.
    pub fn arrow_of_edge(&self, e: usize) -> usize {
        self.simplices[1][e][0]
    }

    pub fn edge_of_arrow(&self, f: usize) -> usize {
        self.simplices[1].iter().position(|t| t[0] == f).expect("every arrow is an edge")
    }
}

fn composable_tuples(c: &FinCat, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return (0..c.object_count()).map(|x| vec![x]).collect();
    }
    let mut out: Vec<Vec<usize>> = (0..c.arrow_count()).map(|f| vec![f]).collect();
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                let last = *t.last().expect("nonempty");
                (0..c.arrow_count()).filter(move |&g| c.dom(g) == c.cod(last)).map(move |g| {
                    let mut u = t.clone();
                    u.push(g);
                    u
                })
            })
            .collect();
    }
    out
}

/// The nerve truncated at `d`, simplices in lexicographic order.
pub fn nerve(c: &FinCat, d: usize) -> Nerve {
    let keys: Vec<Vec<Vec<usize>>> = (0..=d).map(|m| composable_tuples(c, m)).collect();
    let face = |m: usize, i: usize, t: &Vec<usize>| -> Vec<usize> {
        if m == 1 {
            return vec![if i == 0 { c.cod(t[0]) } else { c.dom(t[0]) }];
        }
        let mut u = t.clone();
        if i == 0 {
            u.remove(0);
        } else if i == m {
            u.pop();
        } else {
            let gf = c.compose(t[i], t[i - 1]).expect("composable");
            u.splice(i - 1..=i, [gf]);
        }
        u
    };
    let degen = |m: usize, j: usize, t: &Vec<usize>| -> Vec<usize> {
        if m == 0 {
            return vec![c.identity(t[0])];
        }
        let vertex = if j == 0 { c.dom(t[0]) } else { c.cod(t[j - 1]) };
        let mut u = t.clone();
        u.insert(j, c.identity(vertex));
        u
    };
    let p = Presheaf::from_keys(Layout::Simplicial(d), keys.clone(), face, degen).expect("nerve");
    Nerve { sset: Arc::new(SSet::wrap(p, Some(keys.clone()))), simplices: keys }
}

/// `N(F): N(C) -> N(C')`.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> SMap {
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        target.simplices.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
    let comps = source
        .simplices
        .iter()
        .enumerate()
        .map(|(m, l)| {
            l.iter()
                .map(|t| {
                    let image: Vec<usize> =
                        if m == 0 { vec![f.objects[t[0]]] } else { t.iter().map(|&a| f.arrows[a]).collect() };
                    index[m][&image]
                })
                .collect()
        })
        .collect();
    SMap::new(source.sset.clone(), target.sset.clone(), comps).expect("functor induces a simplicial map")
}

/// `p₁* N(C)`: every column is discrete, `X_{n,m} = N(C)_n`.
#[derive(Clone, Debug)]
pub struct DiscreteSegalSpace {
    pub category: FinCat,
    pub nerve: Nerve,
    pub realized: Arc<BiSSet>,
}

impl DiscreteSegalSpace {
    pub fn new(category: FinCat, truncation: usize) -> Self {
        let nerve = nerve(&category, truncation);
        let realized = Arc::new(const_rows(&nerve.sset));
        DiscreteSegalSpace { category, nerve, realized }
    }

    pub fn truncation(&self) -> usize {
        self.nerve.sset.truncation()
    }

    /// `1_x = s_0 x` as an arrow.
    pub fn unit(&self, x: usize) -> usize {
        self.category.identity(x)
    }
}

/// Which edges of `Δⁿ` an edge map restricts to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeShape {
    /// Essential edges `i-1 -> i`.
    Segal,
    /// Initial edges `0 -> i`.
    Bousfield,
}

impl EdgeShape {
    fn kind(self) -> ShapeKind {
        match self {
            EdgeShape::Segal => ShapeKind::Spine,
            EdgeShape::Bousfield => ShapeKind::Cone,
        }
    }

    /// The edges `(a, b)` in order.
    pub fn edges(self, n: usize) -> Vec<[usize; 2]> {
        match self {
            EdgeShape::Segal => (1..=n).map(|i| [i - 1, i]).collect(),
            EdgeShape::Bousfield => (1..=n).map(|i| [0, i]).collect(),
        }
    }
}

/// The edge map at one vertical degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelEdgeMap {
    pub degree: usize,
    pub source_size: usize,
    pub target_size: usize,
    /// `images[x]` indexes the edge tuple of the `x`-th `n`-simplex.
    pub images: Vec<usize>,
    /// Edge tuples of the target, as 1-simplex indices of the row.
    pub targets: Vec<Vec<usize>>,
    pub injective: bool,
    pub surjective: bool,
    /// The first target tuple not hit, in enumeration order.
    pub first_unhit: Option<Vec<usize>>,
}

/// `ξₙ` or `βₙ`, computed levelwise as restriction `Δⁿ\X -> Sp_n\X` resp.
/// `C_n\X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeMapReport {
    pub shape: EdgeShape,
    pub n: usize,
    pub levels: Vec<LevelEdgeMap>,
    pub bijective: bool,
}

/// All maps `A -> R` indexed by their components.
fn hom_index(a: &Arc<SSet>, r: &Arc<SSet>) -> Result<(Vec<SMap>, HashMap<Components, usize>)> {
    let maps = enumerate_maps(a, r)?.maps;
    let index = maps.iter().enumerate().map(|(i, m)| (m.components().clone(), i)).collect();
    Ok((maps, index))
}

/// The map `Δⁿ -> R` classifying the `n`-simplex `x`.
fn classifying_map(delta: &Arc<SSet>, r: &Arc<SSet>, x: usize) -> Result<Components> {
    let labels = delta.labels().expect("labelled simplex");
    let n = labels[0].len() - 1;
    labels
        .iter()
        .map(|dim| dim.iter().map(|s| r.act(&OrdinalMap::new_unchecked(n, s.clone()), x)).collect())
        .collect()
}

fn edge_map_in_row(row: &Arc<SSet>, shape: EdgeShape, n: usize, degree: usize) -> Result<LevelEdgeMap> {
    let d = row.truncation();
    let handle = make_shape(shape.kind(), n, None, d)?;
    let incl = handle.inclusion.expect("spine and cone are subobjects");
    let (homs, index) = hom_index(&handle.realized, row)?;
    let edges = shape.edges(n);
    let targets: Vec<Vec<usize>> = homs
        .iter()
        .map(|phi| {
            edges
                .iter()
                .map(|e| phi.apply(1, handle.realized.find_label(e).expect("shape edge")))
                .collect()
        })
        .collect();
    let delta = standard_simplex(n, d);
    let images = (0..row.count(n))
        .map(|x| {
            let full = classifying_map(&delta, row, x)?;
            Ok(index[&presheaf::compose(&full, incl.components())])
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut hit = vec![0usize; homs.len()];
    for &i in &images {
        hit[i] += 1;
    }
    let first_unhit = hit.iter().position(|&h| h == 0).map(|i| targets[i].clone());
    Ok(LevelEdgeMap {
        degree,
        source_size: row.count(n),
        target_size: homs.len(),
        injective: hit.iter().all(|&h| h <= 1),
        surjective: first_unhit.is_none(),
        first_unhit,
        images,
        targets,
    })
}

/// The Segal or Bousfield map `X_n -> X_1 ×_{X_0} ... ×_{X_0} X_1` at every
/// vertical degree, for `2 <= n <= D`.
pub fn edge_map(x: &BiSSet, shape: EdgeShape, n: usize) -> Result<EdgeMapReport> {
    let d = x.truncation();
    if n < 2 || n > d {
        return Err(Error::OutOfRange(format!("edge maps need 2 <= n <= D = {d}, got n = {n}")));
    }
    let levels = (0..=d)
        .map(|m| edge_map_in_row(&Arc::new(x.row(m)), shape, n, m))
        .collect::<Result<Vec<_>>>()?;
    let bijective = levels.iter().all(|l| l.injective && l.surjective);
    Ok(EdgeMapReport { shape, n, levels, bijective })
}

/// `ξₙ`.
pub fn segal_map(x: &BiSSet, n: usize) -> Result<EdgeMapReport> {
    edge_map(x, EdgeShape::Segal, n)
}

/// `βₙ`.
pub fn bousfield_map(x: &BiSSet, n: usize) -> Result<EdgeMapReport> {
    edge_map(x, EdgeShape::Bousfield, n)
}

/// The edge map of a simplicial set as a plain set map: an `n`-simplex goes
/// to its tuple of edges, the target being the iterated pullback of `X_1`
/// over `X_0` (along `d₀`/`d₁` alternately for spines, along `d₁` for cones).
/// Targets are listed lexicographically.
pub fn set_edge_map(s: &SSet, shape: EdgeShape, n: usize) -> Result<LevelEdgeMap> {
    if n < 2 || n > s.truncation() {
        return Err(Error::OutOfRange(format!("edge maps need 2 <= n <= D = {}, got n = {n}", s.truncation())));
    }
    let edges = shape.edges(n);
    let ops: Vec<OrdinalMap> = edges.iter().map(|&[a, b]| OrdinalMap::new_unchecked(n, vec![a, b])).collect();
    let tuples = (0..s.count(n))
        .map(|x| ops.iter().map(|f| s.act(f, x)).collect::<Result<Vec<usize>>>())
        .collect::<Result<Vec<_>>>()?;
    // vertex each edge must start at, given the previous edge
    let start = |prev: usize| match shape {
        EdgeShape::Segal => s.face(1, 0, prev),
        EdgeShape::Bousfield => s.face(1, 1, prev),
    };
    let mut from: Vec<Vec<usize>> = vec![Vec::new(); s.count(0)];
    for e in 0..s.count(1) {
        from[s.face(1, 1, e)].push(e);
    }
    let mut targets = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    fn extend(
        depth: usize,
        n: usize,
        all: usize,
        from: &[Vec<usize>],
        start: &dyn Fn(usize) -> usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(stack.clone());
            return;
        }
        let candidates: Vec<usize> = match stack.last() {
            None => (0..all).collect(),
            Some(&p) => from[start(p)].clone(),
        };
        for e in candidates {
            stack.push(e);
            extend(depth + 1, n, all, from, start, stack, out);
            stack.pop();
        }
    }
    extend(0, n, s.count(1), &from, &start, &mut stack, &mut targets);
    let index: HashMap<&Vec<usize>, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let images: Vec<usize> = tuples.iter().map(|t| index[t]).collect();
    let mut hit = vec![0usize; targets.len()];
    for &i in &images {
        hit[i] += 1;
    }
    let first_unhit = hit.iter().position(|&h| h == 0).map(|i| targets[i].clone());
    Ok(LevelEdgeMap {
        degree: 0,
        source_size: s.count(n),
        target_size: targets.len(),
        injective: hit.iter().all(|&h| h <= 1),
        surjective: first_unhit.is_none(),
        first_unhit,
        images,
        targets,
    })
}

/// The discrete-level edge map, computed on the nerve only.
fn discrete_edge_map(x: &DiscreteSegalSpace, shape: EdgeShape, n: usize) -> Result<LevelEdgeMap> {
    set_edge_map(&x.nerve.sset, shape, n)
}

/// Are `ξₙ` bijective for all `2 <= n <= D`? Always true for nerves.
pub fn is_segal_discrete(x: &DiscreteSegalSpace) -> Result<bool> {
    all_bijective(x, EdgeShape::Segal)
}

/// Are `βₙ` bijective for all `2 <= n <= D`?
pub fn is_bousfield_discrete(x: &DiscreteSegalSpace) -> Result<bool> {
    all_bijective(x, EdgeShape::Bousfield)
}

fn all_bijective(x: &DiscreteSegalSpace, shape: EdgeShape) -> Result<bool> {
    Ok(levels_bijective(x, shape)?.iter().all(|&b| b))
}

fn levels_bijective(x: &DiscreteSegalSpace, shape: EdgeShape) -> Result<Vec<bool>> {
    (2..=x.truncation())
        .map(|n| discrete_edge_map(x, shape, n).map(|l| l.injective && l.surjective))
        .collect()
}

/// Bijectivity of `ξₙ` at degree 0 for `n = 2, ..., D`.
pub fn discrete_segal_levels(x: &DiscreteSegalSpace) -> Result<Vec<bool>> {
    levels_bijective(x, EdgeShape::Segal)
}

/// Bijectivity of `βₙ` at degree 0 for `n = 2, ..., D`.
pub fn discrete_bousfield_levels(x: &DiscreteSegalSpace) -> Result<Vec<bool>> {
    levels_bijective(x, EdgeShape::Bousfield)
}

/// `β₂` at degree 0, with any unhit pair named by arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Beta2Report {
    pub source_size: usize,
    pub target_size: usize,
    pub bijective: bool,
    pub counterexample: Option<Vec<String>>,
}

pub fn beta2(x: &DiscreteSegalSpace) -> Result<Beta2Report> {
    let l = discrete_edge_map(x, EdgeShape::Bousfield, 2)?;
    let name = |e: usize| x.category.arrow(x.nerve.arrow_of_edge(e)).name.clone();
    let counterexample = l.first_unhit.as_ref().map(|t| t.iter().map(|&e| name(e)).collect());
    Ok(Beta2Report {
        source_size: l.source_size,
        target_size: l.target_size,
        bijective: l.injective && l.surjective,
        counterexample,
    })
}

/// The fraction operation `f/g = d₀ μ₂(f, g)` where `μ₂ = β₂⁻¹` sends
/// `(f, g)` to the 2-simplex with edge `0 -> 1` equal to `g` and edge
/// `0 -> 2` equal to `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionTable {
    category: FinCat,
    table: Vec<Vec<Option<usize>>>,
}

impl FractionTable {
    /// Requires `β₂` bijective; otherwise `μ₂` has no canonical choice and
    /// a hypothesis error is returned.
    pub fn new(x: &DiscreteSegalSpace) -> Result<Self> {
        if x.truncation() < 2 {
            return Err(Error::OutOfRange("the fraction operation needs D >= 2".into()));
        }
        let b = beta2(x)?;
        if !b.bijective {
            return Err(Error::Hypothesis(format!(
                "β₂ is not bijective ({} simplices over {} pairs): no section μ₂",
                b.source_size, b.target_size
            )));
        }
        let s = &x.nerve.sset;
        let n = x.category.arrow_count();
        let mut table = vec![vec![None; n]; n];
        for sigma in 0..s.count(2) {
            let g = x.nerve.arrow_of_edge(s.face(2, 2, sigma));
            let f = x.nerve.arrow_of_edge(s.face(2, 1, sigma));
            table[f][g] = Some(x.nerve.arrow_of_edge(s.face(2, 0, sigma)));
        }
        Ok(FractionTable { category: x.category.clone(), table })
    }

    /// `f/g`, defined when `dom f = dom g`.
    pub fn get(&self, f: usize, g: usize) -> Result<usize> {
        self.table[f][g].ok_or_else(|| {
            Error::Validation(format!(
                "{} and {} do not share a domain",
                self.category.arrow(f).name,
                self.category.arrow(g).name
            ))
        })
    }

    /// Overwrites one entry; used to exercise the law checker.
    pub fn set(&mut self, f: usize, g: usize, value: usize) {
        self.table[f][g] = Some(value);
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }

    /// Rows `[f, g, f/g]` by arrow name, in index order.
    pub fn entries(&self) -> Vec<[String; 3]> {
        let name = |a: usize| self.category.arrow(a).name.clone();
        let mut out = Vec::new();
        for (f, row) in self.table.iter().enumerate() {
            for (g, v) in row.iter().enumerate() {
                if let Some(h) = v {
                    out.push([name(f), name(g), name(*h)]);
                }
            }
        }
        out
    }
}

/// `f/g` for a category whose `β₂` is bijective.
pub fn fraction(c: &FinCat, f: usize, g: usize) -> Result<usize> {
    if c.dom(f) != c.dom(g) {
        return Err(Error::Validation(format!("{} and {} do not share a domain", c.arrow(f).name, c.arrow(g).name)));
    }
    FractionTable::new(&DiscreteSegalSpace::new(c.clone(), 2))?.get(f, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionLawReport {
    /// `f/f = 1_{cod f}`.
    pub self_division: bool,
    /// `f/1_{dom f} = f`.
    pub unit_division: bool,
    /// `f/g = (f/h)/(g/h)`.
    pub cancellation: bool,
    /// The first failing instance, as arrow names.
    pub counterexample: Option<(String, Vec<String>)>,
}

impl FractionLawReport {
    pub fn holds(&self) -> bool {
        self.self_division && self.unit_division && self.cancellation
    }
}

pub fn check_fraction_laws(t: &FractionTable) -> Result<FractionLawReport> {
    let c = &t.category;
    let name = |a: usize| c.arrow(a).name.clone();
    let mut r = FractionLawReport { self_division: true, unit_division: true, cancellation: true, counterexample: None };
    let fail = |law: &str, args: Vec<usize>, r: &mut FractionLawReport| {
        if r.counterexample.is_none() {
            r.counterexample = Some((law.to_string(), args.into_iter().map(name).collect()));
        }
    };
    for f in 0..c.arrow_count() {
        if t.get(f, f)? != c.identity(c.cod(f)) {
            r.self_division = false;
            fail("f/f = 1", vec![f], &mut r);
        }
        if t.get(f, c.identity(c.dom(f)))? != f {
            r.unit_division = false;
            fail("f/1 = f", vec![f], &mut r);
        }
    }
    for f in 0..c.arrow_count() {
        for g in (0..c.arrow_count()).filter(|&g| c.dom(g) == c.dom(f)) {
            for h in (0..c.arrow_count()).filter(|&h| c.dom(h) == c.dom(f)) {
                let lhs = t.get(f, g)?;
                let rhs = t.get(t.get(f, h)?, t.get(g, h)?)?;
                if lhs != rhs {
                    r.cancellation = false;
                    fail("f/g = (f/h)/(g/h)", vec![f, g, h], &mut r);
                }
            }
        }
    }
    Ok(r)
}

/// `Ho_B`: objects and arrows of `C`, composition `g ∘ f := g/(1_x/f)`.
pub fn ho_b(x: &DiscreteSegalSpace) -> Result<FinGroupoid> {
    let t = FractionTable::new(x)?;
    let c = &x.category;
    let mut triples = Vec::new();
    for f in 0..c.arrow_count() {
        let finv = t.get(c.identity(c.dom(f)), f)?;
        for g in (0..c.arrow_count()).filter(|&g| c.dom(g) == c.cod(f)) {
            triples.push((g, f, t.get(g, finv)?));
        }
    }
    let cat = FinCat::new(c.objects().to_vec(), c.arrows().to_vec(), c.identities().to_vec(), &triples)?;
    FinGroupoid::from_cat(cat)
}

/// `Ho`: objects and arrows of `C`, composition `g ∘ f := d₁ ξ₂⁻¹(f, g)`.
pub fn ho(x: &DiscreteSegalSpace) -> Result<FinCat> {
    if x.truncation() < 2 {
        return Err(Error::OutOfRange("Ho needs D >= 2".into()));
    }
    let l = discrete_edge_map(x, EdgeShape::Segal, 2)?;
    if !(l.injective && l.surjective) {
        return Err(Error::Hypothesis("ξ₂ is not bijective".into()));
    }
    let s = &x.nerve.sset;
    let c = &x.category;
    let triples: Vec<(usize, usize, usize)> = (0..s.count(2))
        .map(|sigma| {
            let e = |i| x.nerve.arrow_of_edge(s.face(2, i, sigma));
            (e(0), e(2), e(1))
        })
        .collect();
    FinCat::new(c.objects().to_vec(), c.arrows().to_vec(), c.identities().to_vec(), &triples)
}

/// Arrows invertible in `Ho`.
pub fn hoequiv(x: &DiscreteSegalSpace) -> Result<Vec<usize>> {
    Ok(ho(x)?.invertible_arrows())
}

/// `Core(X) ⊂ X`: `Core_0 = X_0`, `Core_1 = X_hoequiv`, and `Core_n` the
/// simplices all of whose edges lie in `X_hoequiv`.
#[derive(Clone, Debug)]
pub struct CoreSpace {
    pub row: Subcomplex,
    pub realized: Arc<BiSSet>,
    /// `Core_n -> X_n` over `∂Δⁿ\Core -> ∂Δⁿ\X` is cartesian, per `n`.
    pub matching_cartesian: Vec<(usize, bool)>,
    /// `Core_n -> X_n` over the Segal maps is cartesian, per `n`.
    pub segal_cartesian: Vec<(usize, bool)>,
}

pub fn core_bisimplicial(x: &DiscreteSegalSpace) -> Result<CoreSpace> {
    let d = x.truncation();
    let s = &x.nerve.sset;
    let equiv: Vec<bool> = {
        let he = hoequiv(x)?;
        (0..x.category.arrow_count()).map(|f| he.contains(&f)).collect()
    };
    let members: Vec<Vec<bool>> = (0..=d)
        .map(|n| {
            (0..s.count(n))
                .map(|sigma| {
                    n == 0
                        || (0..n).all(|a| {
                            (a + 1..=n).all(|b| {
                                let e = s.act(&OrdinalMap::new_unchecked(n, vec![a, b]), sigma).expect("edge");
                                equiv[x.nerve.arrow_of_edge(e)]
                            })
                        })
                })
                .collect()
        })
        .collect();
    let row = Subcomplex::from_members(s.clone(), members)?;
    let (core_row, incl) = row.realize();
    let realized = Arc::new(const_rows(&core_row));
    let mut matching_cartesian = Vec::new();
    let mut segal_cartesian = Vec::new();
    for n in 2..=d {
        let bd = make_shape(ShapeKind::Boundary, n, None, d)?;
        matching_cartesian.push((n, restriction_square_cartesian(&incl, &bd.realized, bd.inclusion.as_ref().unwrap(), n)?));
        let sp = make_shape(ShapeKind::Spine, n, None, d)?;
        segal_cartesian.push((n, restriction_square_cartesian(&incl, &sp.realized, sp.inclusion.as_ref().unwrap(), n)?));
    }
    Ok(CoreSpace { row, realized, matching_cartesian, segal_cartesian })
}

/// For a subobject `j: K -> R` and `a: A -> Δⁿ`, is
/// `K_n -> R_n` over `Hom(A, K) -> Hom(A, R)` a pullback square?
fn restriction_square_cartesian(j: &SMap, a: &Arc<SSet>, a_incl: &SMap, n: usize) -> Result<bool> {
    let (k, r) = (j.source(), j.target());
    let labels = a_incl.target().labels().expect("labelled simplex");
    // a map out of A is determined by its values on nondegenerate simplices
    let nd: Vec<(usize, usize)> =
        (0..=a.truncation()).flat_map(|m| a.nondegenerate(m).into_iter().map(move |s| (m, s))).collect();
    let nd_maps: Vec<OrdinalMap> =
        nd.iter().map(|&(m, s)| OrdinalMap::new_unchecked(n, labels[m][a_incl.apply(m, s)].clone())).collect();
    let index = |obj: &Arc<SSet>| -> Result<(Vec<SMap>, HashMap<Vec<usize>, usize>)> {
        let maps = enumerate_maps(a, obj)?.maps;
        let idx = maps.iter().enumerate().map(|(i, phi)| (nd.iter().map(|&(m, s)| phi.apply(m, s)).collect(), i)).collect();
        Ok((maps, idx))
    };
    let (hom_k, idx_k) = index(k)?;
    let (_, idx_r) = index(r)?;
    let restrict = |obj: &Arc<SSet>, idx: &HashMap<Vec<usize>, usize>, x: usize| -> Result<usize> {
        let key = nd_maps.iter().map(|f| obj.act(f, x)).collect::<Result<Vec<_>>>()?;
        Ok(idx[&key])
    };
    let top: Vec<usize> = (0..k.count(n)).map(|x| j.apply(n, x)).collect();
    let left = (0..k.count(n)).map(|x| restrict(k, &idx_k, x)).collect::<Result<Vec<_>>>()?;
    let right = (0..r.count(n)).map(|x| restrict(r, &idx_r, x)).collect::<Result<Vec<_>>>()?;
    let bottom: Vec<usize> =
        hom_k.iter().map(|phi| idx_r[&nd.iter().map(|&(m, s)| j.apply(m, phi.apply(m, s))).collect::<Vec<_>>()]).collect();
    Ok(is_cartesian(&top, &left, &right, &bottom, hom_k.len()))
}

/// Is the square `A -top-> B -right-> D`, `A -left-> C -bottom-> D` of
/// finite sets commutative and cartesian?
pub fn is_cartesian(top: &[usize], left: &[usize], right: &[usize], bottom: &[usize], c_size: usize) -> bool {
    if top.iter().zip(left).any(|(&t, &l)| right[t] != bottom[l]) {
        return false;
    }
    let mut seen = HashMap::new();
    for (a, (&t, &l)) in top.iter().zip(left).enumerate() {
        if seen.insert((t, l), a).is_some() {
            return false;
        }
    }
    let mut fibre = HashMap::new();
    for &d in &bottom[..c_size] {
        *fibre.entry(d).or_insert(0usize) += 1;
    }
    let pullback_size: usize = right.iter().map(|d| fibre.get(d).copied().unwrap_or(0)).sum();
    seen.len() == pullback_size
}

/// Restriction along the inclusion `ι: core(C) -> C`, from functors
/// `B -> core(C)` to functors `B -> C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightAdjointReport {
    pub into_core: usize,
    pub into_category: usize,
    pub bijection: bool,
}

pub fn right_adjoint_check(b: &FinGroupoid, c: &FinCat) -> RightAdjointReport {
    let k = core(c);
    let into_core = enumerate_functors(b.cat(), k.cat());
    let into_c = enumerate_functors(b.cat(), c);
    let embed: Vec<usize> = k.cat().arrows().iter().map(|a| c.find_arrow(&a.name).expect("core arrow")).collect();
    let mut images: Vec<Functor> = into_core
        .iter()
        .map(|f| Functor { objects: f.objects.clone(), arrows: f.arrows.iter().map(|&a| embed[a]).collect() })
        .collect();
    images.sort();
    images.dedup();
    let mut all = into_c.clone();
    all.sort();
    RightAdjointReport { into_core: into_core.len(), into_category: into_c.len(), bijection: images.len() == into_core.len() && images == all }
}

/// Completeness via `{0}\X: IΔ¹\X -> X_0` at degree 0: is it a bijection?
pub fn is_complete_discrete(x: &DiscreteSegalSpace) -> Result<bool> {
    let d = x.truncation();
    let i1 = igroupoid_nerve(1, d);
    let maps = enumerate_maps(&i1, &x.nerve.sset)?.maps;
    let v0 = i1.find_label(&[0]).expect("vertex 0");
    let mut hit = vec![0usize; x.nerve.sset.count(0)];
    for m in &maps {
        hit[m.apply(0, v0)] += 1;
    }
    Ok(hit.iter().all(|&h| h == 1))
}

/// Iso-count oracle: does `iso ↦ source` biject isomorphisms with objects?
pub fn complete_by_isos(c: &FinCat) -> bool {
    let mut hit = vec![0usize; c.object_count()];
    for f in c.invertible_arrows() {
        hit[c.dom(f)] += 1;
    }
    hit.iter().all(|&h| h == 1)
}

/// Are all structure maps `X_n -> X_m` between columns bijections?
pub fn is_homotopically_constant_discrete(x: &BiSSet) -> bool {
    structure_maps_bijective(x, Direction::BetweenColumns)
}

/// Is `X ≅ p₂* ι₂* X`, i.e. isomorphic to the constant diagram on its
/// `0`-th column?
pub fn is_const_cols_isomorphic(x: &BiSSet) -> bool {
    let c = const_cols(&col0(x));
    if c.counts() != x.counts() {
        return false;
    }
    let mut found = false;
    let _ = x.inner.search_maps(&c.inner, &|_, _| None, |m| {
        if presheaf::is_bijective(m, &c.inner.sizes) {
            found = true;
            return false;
        }
        true
    });
    found
}

/// The transposed constancy check: all structure maps between rows of
/// `σ*X` bijective.
pub fn transposed_constancy(x: &BiSSet) -> bool {
    structure_maps_bijective(&transpose(x), Direction::BetweenRows)
}

/// `(k □ id)^!(X)_{n,0} = sS(IΔⁿ □ Δ⁰, X)`, i.e. maps `IΔⁿ -> X_{•0}`, with
/// the restriction along `Δⁿ -> IΔⁿ` into `X_{n,0}`.
#[derive(Clone, Debug)]
pub struct CofreeCore {
    pub n: usize,
    pub elements: Vec<SMap>,
    /// `restriction[k]` is the `n`-simplex of `X_{•0}` the `k`-th element
    /// restricts to.
    pub restriction: Vec<usize>,
    pub trust_dimension: usize,
}

/// Largest cardinality bound attempted by [`cofree_core`].
pub const COFREE_CORE_LIMIT: u128 = 1_000_000_000_000_000;

pub fn cofree_core(x: &BiSSet, n: usize) -> Result<CofreeCore> {
    let d = x.truncation();
    if n > d {
        return Err(Error::OutOfRange(format!("degree {n} exceeds truncation {d}")));
    }
    let row = Arc::new(x.row(0));
    let v = row.count(0) as u128;
    let e = if d >= 1 { row.count(1) as u128 } else { 1 };
    let bound = v
        .checked_pow((n + 1) as u32)
        .and_then(|a| e.checked_pow((n * (n + 1)) as u32).and_then(|b| a.checked_mul(b)))
        .unwrap_or(u128::MAX);
    if bound > COFREE_CORE_LIMIT {
        return Err(Error::Resource { bound, limit: COFREE_CORE_LIMIT });
    }
    let inerve = igroupoid_nerve(n, d);
    let en = enumerate_maps(&inerve, &row)?;
    let emb = canonical_embedding(n, d);
    let top = emb.source().find_label(&(0..=n).collect::<Vec<_>>()).expect("top simplex");
    let restriction = en.maps.iter().map(|phi| phi.apply(n, emb.apply(n, top))).collect();
    Ok(CofreeCore { n, elements: en.maps, restriction, trust_dimension: trust_dimension(&inerve) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::isomorphic;

    fn space(c: FinCat) -> DiscreteSegalSpace {
        DiscreteSegalSpace::new(c, 3)
    }

    #[test]
    fn nerve_of_ordinal_is_simplex() {
        let n = nerve(&FinCat::ordinal(2), 3);
        assert_eq!(n.sset.nondegenerate_counts(), vec![3, 3, 1]);
        assert!(isomorphic(&n.sset, &standard_simplex(2, 3)));
        n.sset.check_functoriality().unwrap();
    }

    #[test]
    fn nerve_of_codiscrete_is_conical() {
        let n = nerve(&FinCat::codiscrete(2), 3);
        assert!(isomorphic(&n.sset, &igroupoid_nerve(1, 3)));
    }

    #[test]
    fn walking_arrow_beta2() {
        let x = space(FinCat::ordinal(1));
        let b = beta2(&x).unwrap();
        assert_eq!((b.source_size, b.target_size), (4, 5));
        assert_eq!(b.counterexample, Some(vec!["0-1".to_string(), "id0".to_string()]));
        assert!(is_segal_discrete(&x).unwrap());
        assert!(!is_bousfield_discrete(&x).unwrap());
        assert!(matches!(FractionTable::new(&x), Err(Error::Hypothesis(_))));
        assert!(ho(&x).is_ok());
        assert!(ho_b(&x).is_err());
    }

    #[test]
    fn set_edge_map_matches_hom_oracle() {
        let as_tuples = |l: &LevelEdgeMap| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
            let mut t = l.targets.clone();
            t.sort();
            (l.images.iter().map(|&i| l.targets[i].clone()).collect(), t)
        };
        let rows = [
            nerve(&FinCat::ordinal(1), 3).sset,
            nerve(&FinCat::cyclic_group(2), 3).sset,
            igroupoid_nerve(1, 3),
            make_shape(ShapeKind::Boundary, 2, None, 3).unwrap().realized,
        ];
        for row in &rows {
            for shape in [EdgeShape::Segal, EdgeShape::Bousfield] {
                for n in 2..=3 {
                    let fast = set_edge_map(row, shape, n).unwrap();
                    let slow = edge_map_in_row(row, shape, n, 0).unwrap();
                    assert_eq!(as_tuples(&fast), as_tuples(&slow));
                    assert_eq!((fast.injective, fast.surjective), (slow.injective, slow.surjective));
                }
            }
        }
    }

    #[test]
    fn fractions_in_cyclic_group() {
        let c = FinCat::cyclic_group(3);
        assert_eq!(fraction(&c, 1, 2).unwrap(), 2);
        let t = FractionTable::new(&space(c)).unwrap();
        assert!(check_fraction_laws(&t).unwrap().holds());
    }

    #[test]
    fn corrupted_fraction_entry_breaks_cancellation() {
        let c = FinCat::cyclic_group(3);
        let mut t = FractionTable::new(&space(c)).unwrap();
        // 1/2 is 2 in Z/3; make it 0
        t.table[1][2] = Some(0);
        let r = check_fraction_laws(&t).unwrap();
        assert!(!r.cancellation);
        assert!(!r.holds());
    }

    #[test]
    fn ho_b_of_group_is_group() {
        let c = FinCat::cyclic_group(4);
        let x = space(c.clone());
        assert_eq!(ho_b(&x).unwrap().cat(), &c);
        assert_eq!(ho(&x).unwrap(), c);
    }

    #[test]
    fn cartesian_oracle() {
        // identity square is cartesian, a collapsed one is not
        assert!(is_cartesian(&[0, 1], &[0, 1], &[0, 1], &[0, 1], 2));
        assert!(!is_cartesian(&[0, 0], &[0, 0], &[0], &[0], 1));
    }

    #[test]
    fn core_space_squares() {
        let c = FinCat::disjoint_union(&[("a", &FinCat::ordinal(1)), ("b", &FinCat::cyclic_group(2))]);
        let k = core_bisimplicial(&space(c.clone())).unwrap();
        assert!(k.matching_cartesian.iter().all(|p| p.1));
        assert!(k.segal_cartesian.iter().all(|p| p.1));
        assert!(isomorphic(&k.realized.row(0), &nerve(core(&c).cat(), 3).sset));
    }

    #[test]
    fn completeness() {
        for (c, expect) in [(FinCat::discrete(2), true), (FinCat::codiscrete(2), false), (FinCat::cyclic_group(2), false), (FinCat::ordinal(1), true)] {
            assert_eq!(is_complete_discrete(&space(c.clone())).unwrap(), expect);
            assert_eq!(complete_by_isos(&c), expect);
        }
    }

    #[test]
    fn cofree_core_of_walking_arrow() {
        let x = space(FinCat::ordinal(1));
        let cc = cofree_core(&x.realized, 1).unwrap();
        assert_eq!(cc.elements.len(), 2);
    }

    #[test]
    fn right_adjoint_small() {
        let b = FinGroupoid::from_cat(FinCat::terminal()).unwrap();
        let r = right_adjoint_check(&b, &FinCat::ordinal(1));
        assert_eq!((r.into_core, r.into_category), (2, 2));
        assert!(r.bijection);
    }
}
