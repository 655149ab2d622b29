//! Cellular certificates: explicit sequences of pushouts of coproducts of
//! named generating inclusions, stored with every intermediate stage so that
//! checking is recomputation plus equality.
//!
//! Simplices of the ambient objects (`Δⁿ` and `IΔⁿ`) are addressed by their
//! vertex sequences.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presheaf::Components;
use crate::shapes::{all_sequences, generating_faces, igroupoid_nerve, make_shape, spanned_by, standard_simplex, ShapeKind};
use crate::sset::{coproduct, pushout, SMap, SSet, Subcomplex};

pub const CERTIFICATE_FORMAT: &str = "bsegal.certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// `Δⁿ`, monotone sequences.
    Simplex,
    /// `IΔⁿ`, all sequences.
    Igroupoid,
}

impl Ambient {
    pub fn realize(self, n: usize, d: usize) -> Arc<SSet> {
        match self {
            Ambient::Simplex => standard_simplex(n, d),
            Ambient::Igroupoid => igroupoid_nerve(n, d),
        }
    }
}

/// A generating inclusion `G ⊂ Δ^dim`, with `G` spanned by the listed faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub dim: usize,
    pub domain_faces: Vec<Vec<usize>>,
}

impl Generator {
    fn from_shape(name: String, kind: ShapeKind, n: usize, i: Option<usize>) -> Self {
        Generator { name, dim: n, domain_faces: generating_faces(kind, n, i).expect("valid generator") }
    }

    /// The inclusion `G -> Δ^dim` at truncation `d`.
    pub fn inclusion(&self, d: usize) -> SMap {
        spanned_by(standard_simplex(self.dim, d), &self.domain_faces).realize().1
    }
}

/// What the certificate claims: `source ⊂ target ⊂ ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub ambient: Ambient,
    pub n: usize,
    pub truncation: usize,
    pub source: String,
    pub target: String,
    /// Nondegenerate simplices of the source, per dimension.
    pub source_cells: Vec<Vec<Vec<usize>>>,
    /// Nondegenerate simplices of the target, per dimension.
    pub target_cells: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub generator: String,
    /// Characteristic simplices, lexicographically ordered.
    pub attachments: Vec<Vec<usize>>,
    /// Simplex counts of the stage after this step.
    pub stage_counts: Vec<usize>,
    /// Nondegenerate simplices of the stage after this step.
    pub stage_cells: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularCertificate {
    pub format: String,
    pub claim: Claim,
    pub generators: Vec<Generator>,
    pub steps: Vec<Step>,
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub accepted: bool,
    pub steps_checked: usize,
    /// Index of the first step that failed, if any.
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

fn cells_of(sub: &Subcomplex) -> Vec<Vec<Vec<usize>>> {
    let amb = sub.ambient();
    let mut cells = vec![Vec::new(); amb.truncation() + 1];
    for (n, x) in sub.nondegenerate_members() {
        cells[n].push(amb.label(n, x).expect("sequence-labelled ambient").to_vec());
    }
    for c in &mut cells {
        c.sort();
    }
    while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    cells
}

fn subcomplex_from_cells(ambient: &Arc<SSet>, cells: &[Vec<Vec<usize>>]) -> Result<Subcomplex> {
    let labels: Vec<Vec<usize>> = cells.iter().flatten().cloned().collect();
    let sub = Subcomplex::generated_by_labels(ambient.clone(), &labels)?;
    if cells_of(&sub) != trim(cells.to_vec()) {
        return Err(Error::Validation("listed cells are not the nondegenerate simplices they generate".into()));
    }
    Ok(sub)
}

fn trim(mut cells: Vec<Vec<Vec<usize>>>) -> Vec<Vec<Vec<usize>>> {
    for c in &mut cells {
        c.sort();
    }
    while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    if cells.is_empty() {
        cells.push(Vec::new());
    }
    cells
}

/// The image of `Δ^k` under the characteristic simplex `seq`.
fn cell_image(ambient: &Arc<SSet>, seq: &[usize]) -> Result<Subcomplex> {
    if ambient.find_label(seq).is_none() && seq.len() <= ambient.truncation() + 1 {
        return Err(Error::Validation(format!("{seq:?} is not a simplex of the ambient")));
    }
    // Cells above the truncation are generated by their faces in range.
    let d = ambient.truncation();
    let k = seq.len() - 1;
    let faces: Vec<Vec<usize>> = if k <= d {
        vec![seq.to_vec()]
    } else {
        crate::ordinal::OrdinalMap::all(d, k)
            .into_iter()
            .filter(|f| f.is_injective())
            .map(|f| f.values().iter().map(|&v| seq[v]).collect())
            .collect()
    };
    for f in &faces {
        if ambient.find_label(f).is_none() {
            return Err(Error::Validation(format!("{f:?} is not a simplex of the ambient")));
        }
    }
    Subcomplex::generated_by_labels(ambient.clone(), &faces)
}

struct Builder {
    ambient: Arc<SSet>,
    stage: Subcomplex,
    steps: Vec<Step>,
}

impl Builder {
    fn new(ambient: Arc<SSet>, source: Subcomplex) -> Self {
        Builder { ambient, stage: source, steps: Vec::new() }
    }

    fn attach(&mut self, generator: &str, mut attachments: Vec<Vec<usize>>) -> Result<()> {
        attachments.sort();
        let mut next = self.stage.clone();
        for seq in &attachments {
            next = next.union(&cell_image(&self.ambient, seq)?);
        }
        self.steps.push(Step {
            generator: generator.to_string(),
            attachments,
            stage_counts: next.counts(),
            stage_cells: cells_of(&next),
        });
        self.stage = next;
        Ok(())
    }

    fn finish(self, claim: Claim, generators: Vec<Generator>) -> CellularCertificate {
        CellularCertificate { format: CERTIFICATE_FORMAT.into(), claim, generators, steps: self.steps }
    }
}

fn claim(ambient: Ambient, n: usize, d: usize, source: (&str, &Subcomplex), target: (&str, &Subcomplex)) -> Claim {
    Claim {
        ambient,
        n,
        truncation: d,
        source: source.0.into(),
        target: target.0.into(),
        source_cells: cells_of(source.1),
        target_cells: cells_of(target.1),
    }
}

/// `T_{m+1}`: sequences `(c_0, ..., c_{m+1})` over `[n]` with `c_0 = 0`, no
/// two consecutive entries equal, and not weakly increasing.
pub fn nonmonotone_attachments(n: usize, m: usize) -> Vec<Vec<usize>> {
    all_sequences(n, m + 2)
        .into_iter()
        .filter(|s| s[0] == 0 && s.windows(2).all(|w| w[0] != w[1]) && s.windows(2).any(|w| w[0] > w[1]))
        .collect()
}

fn horn_name(k: usize) -> String {
    format!("h0^{k}")
}

/// The filtration `Δⁿ = F⁽¹⁾ ⊂ F⁽²⁾ ⊂ ... ⊂ IΔⁿ`, step `m` attaching one
/// `Λ₀^{m+1} ⊂ Δ^{m+1}` per element of `T_{m+1}`.
///
/// At truncation `D` the last step attaches `T_{D+1}`: those cells are
/// invisible except for their `d₀` faces, which are exactly the
/// nondegenerate `D`-simplices not starting at `0`.
pub fn build_igroupoid_filtration(n: usize, d: usize) -> Result<CellularCertificate> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("the filtration needs D >= 2, got {d}")));
    }
    let ambient = Ambient::Igroupoid.realize(n, d);
    let source = crate::shapes::monotone_part(&ambient);
    let target = Subcomplex::full(ambient.clone());
    let mut generators = Vec::new();
    let mut b = Builder::new(ambient.clone(), source.clone());
    if n >= 1 {
        for m in 1..=d {
            let k = m + 1;
            generators.push(Generator::from_shape(horn_name(k), ShapeKind::Horn, k, Some(0)));
            b.attach(&horn_name(k), nonmonotone_attachments(n, m))?;
        }
    }
    let c = claim(Ambient::Igroupoid, n, d, ("simplex", &source), ("igroupoid", &target));
    Ok(b.finish(c, generators))
}

/// Checks the stagewise facts of the filtration: `F⁽ᵐ⁾` contains every
/// simplex of dimension `< m` and every `m`-simplex starting at `0`. Returns
/// the first stage where this fails.
pub fn filtration_stage_facts(c: &CellularCertificate) -> Result<Option<usize>> {
    let st = stages(c)?;
    let amb = st[0].ambient().clone();
    for (k, stage) in st.iter().enumerate() {
        let m = k + 1;
        for dim in 0..=m.min(amb.truncation()) {
            for x in 0..amb.count(dim) {
                let l = amb.label(dim, x).expect("labelled");
                if (dim < m || l[0] == 0) && !stage.contains(dim, x) {
                    return Ok(Some(k));
                }
            }
        }
    }
    Ok(None)
}

/// Name of the generator `C_{n-1} ∪ d¹ ∪ ... ∪ d^{i-1} ⊂ Δ^{n-1}`.
fn interchange_name(k: usize, i: usize) -> String {
    match i {
        1 => format!("c{k}"),
        2 => format!("c{k}+d1"),
        _ => format!("c{k}+d1..d{}", i - 1),
    }
}

/// `k_n: C_n ⊂ Λ₀ⁿ` as `n` pushouts: step `i` attaches the face `d^i[Δ^{n-1}]`
/// along `C_{n-1} ∪ ⋃_{0<j<i} d^j[Δ^{n-2}] ⊂ Δ^{n-1}`. For `n = 2` the
/// chain is empty.
pub fn cone_to_horn_chain(n: usize, d: usize) -> Result<CellularCertificate> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the cone-to-horn chain needs n >= 2, got {n}")));
    }
    let ambient = Ambient::Simplex.realize(n, d);
    let source = spanned_by(ambient.clone(), &generating_faces(ShapeKind::Cone, n, None)?);
    let target = spanned_by(ambient.clone(), &generating_faces(ShapeKind::Horn, n, Some(0))?);
    let mut generators = Vec::new();
    let mut b = Builder::new(ambient.clone(), source.clone());
    if n >= 3 {
        let k = n - 1;
        for i in 1..=n {
            let mut faces = generating_faces(ShapeKind::Cone, k, None)?;
            faces.extend((1..i).map(|j| (0..=k).filter(|&v| v != j).collect::<Vec<_>>()));
            let name = interchange_name(k, i);
            generators.push(Generator { name: name.clone(), dim: k, domain_faces: faces });
            b.attach(&name, vec![(0..=n).filter(|&v| v != i).collect()])?;
        }
    }
    let c = claim(Ambient::Simplex, n, d, ("cone", &source), ("horn0", &target));
    Ok(b.finish(c, generators))
}

/// `Sp_n ⊂ SpC_n` by pushouts of `sp₂` and `C_n ⊂ SpC_n` by pushouts of
/// `c₂`, both attaching `Δ^{0,i,i+1}` for `i = 1, ..., n-1`.
pub fn spine_cone_factorization(n: usize, d: usize) -> Result<(CellularCertificate, CellularCertificate)> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the spine/cone factorization needs n >= 2, got {n}")));
    }
    let ambient = Ambient::Simplex.realize(n, d);
    let target = spanned_by(ambient.clone(), &generating_faces(ShapeKind::Spc, n, None)?);
    let build = |kind: ShapeKind, name: &str, gen: &str| -> Result<CellularCertificate> {
        let source = spanned_by(ambient.clone(), &generating_faces(kind, n, None)?);
        let mut b = Builder::new(ambient.clone(), source.clone());
        for i in 1..n {
            b.attach(gen, vec![vec![0, i, i + 1]])?;
        }
        let generators = vec![Generator::from_shape(gen.into(), kind, 2, None)];
        Ok(b.finish(claim(Ambient::Simplex, n, d, (name, &source), ("spc", &target)), generators))
    };
    Ok((build(ShapeKind::Spine, "spine", "sp2")?, build(ShapeKind::Cone, "cone", "c2")?))
}

fn reject(step: usize, reason: String) -> CertificateReport {
    CertificateReport { accepted: false, steps_checked: step, failing_step: Some(step), reason: Some(reason) }
}

/// Recomputes every step as the pushout of the coproduct of its attaching
/// maps over the previous stage, and checks that the induced map into the
/// ambient is injective with image the recorded stage. The source, every
/// stage and the claimed target are compared as subcomplexes.
pub fn verify_certificate(c: &CellularCertificate) -> CertificateReport {
    if c.format != CERTIFICATE_FORMAT {
        return reject(0, format!("unknown format {}", c.format));
    }
    let ambient = c.claim.ambient.realize(c.claim.n, c.claim.truncation);
    let mut stage = match subcomplex_from_cells(&ambient, &c.claim.source_cells) {
        Ok(s) => s,
        Err(e) => return reject(0, format!("source: {e}")),
    };
    let target = match subcomplex_from_cells(&ambient, &c.claim.target_cells) {
        Ok(s) => s,
        Err(e) => return reject(0, format!("target: {e}")),
    };
    for (i, step) in c.steps.iter().enumerate() {
        match check_step(c, &ambient, &stage, step) {
            Ok(next) => stage = next,
            Err(e) => return reject(i, e.to_string()),
        }
    }
    if stage.members() != target.members() {
        return reject(c.steps.len(), "final stage differs from the claimed target".into());
    }
    CertificateReport { accepted: true, steps_checked: c.steps.len(), failing_step: None, reason: None }
}

fn check_step(c: &CellularCertificate, ambient: &Arc<SSet>, stage: &Subcomplex, step: &Step) -> Result<Subcomplex> {
    let d = ambient.truncation();
    let gen = c
        .generators
        .iter()
        .find(|g| g.name == step.generator)
        .ok_or_else(|| Error::Validation(format!("unknown generator {}", step.generator)))?;
    let recorded = subcomplex_from_cells(ambient, &step.stage_cells)?;
    if recorded.counts() != step.stage_counts {
        return Err(Error::Validation("stage counts disagree with the stage cells".into()));
    }
    if step.attachments.is_empty() {
        if recorded.members() != stage.members() {
            return Err(Error::Validation("a step without attachments must not change the stage".into()));
        }
        return Ok(recorded);
    }
    let g_incl = gen.inclusion(d);
    let (stage_obj, stage_incl) = stage.realize();
    // position of ambient simplices inside the realized stage
    let stage_pos: Vec<Vec<Option<usize>>> = (0..=d)
        .map(|n| {
            let mut pos = vec![None; ambient.count(n)];
            for (k, &x) in stage_incl.components()[n].iter().enumerate() {
                pos[x] = Some(k);
            }
            pos
        })
        .collect();
    let cell = g_incl.target().clone();
    let mut chis = Vec::new();
    let mut attaching = Vec::new();
    for seq in &step.attachments {
        if seq.len() != gen.dim + 1 {
            return Err(Error::Validation(format!("{seq:?} is not a {}-simplex", gen.dim)));
        }
        let chi: Components = (0..=d)
            .map(|n| {
                (0..cell.count(n))
                    .map(|x| {
                        let s: Vec<usize> = cell.label(n, x).expect("labelled").iter().map(|&v| seq[v]).collect();
                        ambient.find_label(&s).ok_or_else(|| Error::Validation(format!("{s:?} is not in the ambient")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let att: Components = (0..=d)
            .map(|n| {
                g_incl.components()[n]
                    .iter()
                    .map(|&x| {
                        stage_pos[n][chi[n][x]].ok_or_else(|| {
                            Error::Validation(format!("attaching map of {seq:?} leaves the current stage"))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        chis.push(SMap::new(cell.clone(), ambient.clone(), chi)?);
        attaching.push(SMap::new(g_incl.source().clone(), stage_obj.clone(), att)?);
    }
    let k = step.attachments.len();
    let (gs, g_inj) = coproduct(&vec![g_incl.source().clone(); k])?;
    let (cs, c_inj) = coproduct(&vec![cell.clone(); k])?;
    let along = crate::sset::copair(&gs, &g_inj, &attaching)?;
    let incl_parts: Vec<SMap> = c_inj.iter().map(|j| j.compose(&g_incl)).collect::<Result<_>>()?;
    let generator_coproduct = crate::sset::copair(&gs, &g_inj, &incl_parts)?;
    let po = pushout(&along, &generator_coproduct)?;
    let cells_into_ambient = crate::sset::copair(&cs, &c_inj, &chis)?;
    let to_ambient = po.induced(&stage_incl, &cells_into_ambient)?;
    if !to_ambient.is_mono() {
        return Err(Error::Validation("the pushout does not embed into the ambient".into()));
    }
    let image = to_ambient.image();
    if image.members() != recorded.members() {
        return Err(Error::Validation("the pushout differs from the recorded stage".into()));
    }
    Ok(recorded)
}

/// Is every step of the certificate an attachment along the named generator
/// kind (e.g. only left horns `h0^k`)?
pub fn uses_only(c: &CellularCertificate, prefix: &str) -> bool {
    c.steps.iter().all(|s| s.generator.starts_with(prefix))
}

/// Subcomplexes of every stage, starting with the source.
pub fn stages(c: &CellularCertificate) -> Result<Vec<Subcomplex>> {
    let ambient = c.claim.ambient.realize(c.claim.n, c.claim.truncation);
    let mut out = vec![subcomplex_from_cells(&ambient, &c.claim.source_cells)?];
    for s in &c.steps {
        out.push(subcomplex_from_cells(&ambient, &s.stage_cells)?);
    }
    Ok(out)
}

/// The composite of a certificate as a map between the realized source and
/// target stages.
pub fn composite(c: &CellularCertificate) -> Result<SMap> {
    let st = stages(c)?;
    let (src, src_incl) = st[0].realize();
    let (tgt, tgt_incl) = st.last().expect("nonempty").realize();
    let comps = (0..=c.claim.truncation)
        .map(|n| {
            src_incl.components()[n]
                .iter()
                .map(|&x| tgt_incl.components()[n].iter().position(|&y| y == x).expect("source inside target"))
                .collect()
        })
        .collect();
    SMap::new(src, tgt, comps)
}

/// Checks `h₀ⁿ ∘ kₙ = cₙ` for the chain produced by [`cone_to_horn_chain`].
pub fn horn_chain_commutes(c: &CellularCertificate) -> Result<bool> {
    let n = c.claim.n;
    let d = c.claim.truncation;
    let k = composite(c)?;
    let h = make_shape(ShapeKind::Horn, n, Some(0), d)?.inclusion.expect("horn inclusion");
    let cn = make_shape(ShapeKind::Cone, n, None, d)?.inclusion.expect("cone inclusion");
    same_labelled(&h.compose(&relabel_between(&k, h.source())?)?, &cn)
}

/// Re-expresses `k: A -> B` as a map into `B'` when `B` and `B'` have the
/// same labelled simplices.
fn relabel_between(k: &SMap, target: &Arc<SSet>) -> Result<SMap> {
    let t = k.target();
    let comps = (0..=t.truncation())
        .map(|n| {
            k.components()[n]
                .iter()
                .map(|&y| {
                    let l = t.label(n, y).expect("labelled");
                    target.find_label(l).ok_or_else(|| Error::Validation(format!("{l:?} missing from target")))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    SMap::new(k.source().clone(), target.clone(), comps)
}

/// Equal as maps of labelled simplices.
fn same_labelled(f: &SMap, g: &SMap) -> Result<bool> {
    if f.target().labels() != g.target().labels() {
        return Ok(false);
    }
    let d = f.source().truncation();
    for n in 0..=d {
        let image = |m: &SMap| -> Vec<(Vec<usize>, Vec<usize>)> {
            let mut v: Vec<_> = (0..m.source().count(n))
                .map(|x| {
                    (
                        m.source().label(n, x).expect("labelled").to_vec(),
                        m.target().label(n, m.apply(n, x)).expect("labelled").to_vec(),
                    )
                })
                .collect();
            v.sort();
            v
        };
        if image(f) != image(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that both factorization certificates compose to `sp_n` resp. `c_n`
/// after the inclusion `SpC_n ⊂ Δⁿ`.
pub fn factorization_commutes(spine: &CellularCertificate, cone: &CellularCertificate) -> Result<bool> {
    let n = spine.claim.n;
    let d = spine.claim.truncation;
    let spc = make_shape(ShapeKind::Spc, n, None, d)?.inclusion.expect("spc inclusion");
    let sp = make_shape(ShapeKind::Spine, n, None, d)?.inclusion.expect("spine inclusion");
    let cn = make_shape(ShapeKind::Cone, n, None, d)?.inclusion.expect("cone inclusion");
    let a = spc.compose(&relabel_between(&composite(spine)?, spc.source())?)?;
    let b = spc.compose(&relabel_between(&composite(cone)?, spc.source())?)?;
    Ok(same_labelled(&a, &sp)? && same_labelled(&b, &cn)?)
}

impl CellularCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attachment_sets() {
        assert_eq!(nonmonotone_attachments(1, 1), vec![vec![0, 1, 0]]);
        assert_eq!(nonmonotone_attachments(2, 1), vec![vec![0, 1, 0], vec![0, 2, 0], vec![0, 2, 1]]);
        assert_eq!(nonmonotone_attachments(1, 2), vec![vec![0, 1, 0, 1]]);
    }

    #[test]
    fn filtration_of_interval() {
        let c = build_igroupoid_filtration(1, 4).unwrap();
        assert!(c.steps.iter().all(|s| s.attachments.len() == 1));
        let r = verify_certificate(&c);
        assert!(r.accepted, "{r:?}");
        assert_eq!(filtration_stage_facts(&c).unwrap(), None);
        assert!(uses_only(&c, "h0^"));
    }

    #[test]
    fn filtration_json_round_trip() {
        let c = build_igroupoid_filtration(2, 3).unwrap();
        assert_eq!(c.steps[0].attachments.len(), 3);
        assert_eq!(CellularCertificate::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn filtration_of_point_is_empty() {
        let c = build_igroupoid_filtration(0, 3).unwrap();
        assert!(c.steps.is_empty());
        assert!(verify_certificate(&c).accepted);
    }

    #[test]
    fn deleted_attachment_is_rejected() {
        let mut c = build_igroupoid_filtration(2, 3).unwrap();
        c.steps[1].attachments.remove(0);
        let r = verify_certificate(&c);
        assert_eq!(r.failing_step, Some(1));
    }

    #[test]
    fn horn_chain() {
        let c = cone_to_horn_chain(2, 2).unwrap();
        assert!(c.steps.is_empty());
        assert!(verify_certificate(&c).accepted);
        for n in 3..=4 {
            let c = cone_to_horn_chain(n, n).unwrap();
            assert_eq!(c.steps.len(), n);
            assert!(verify_certificate(&c).accepted);
            assert!(horn_chain_commutes(&c).unwrap());
        }
    }

    #[test]
    fn factorization() {
        let (s, c) = spine_cone_factorization(3, 3).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.steps.last().unwrap().stage_cells.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 5, 2]);
        assert!(verify_certificate(&s).accepted && verify_certificate(&c).accepted);
        assert!(factorization_commutes(&s, &c).unwrap());
    }
}
