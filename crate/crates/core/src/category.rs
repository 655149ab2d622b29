//! Finite categories and groupoids given by explicit composition tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FINCAT_FORMAT: &str = "bsegal.fincat/1";
pub const FINGROUPOID_FORMAT: &str = "bsegal.fingroupoid/1";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowInfo {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. `compose[g][f]` is `g ∘ f`, defined exactly when
/// `cod f = dom g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<ArrowInfo>,
    identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

impl FinCat {
    /// Builds and validates a category. `compose` lists `(g, f, g∘f)`;
    /// composites with an identity may be omitted.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowInfo>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::Validation("one identity per object expected".into()));
        }
        if let Some(a) = arrows.iter().find(|a| a.dom >= objects.len() || a.cod >= objects.len()) {
            return Err(Error::Validation(format!("arrow {} has an unknown endpoint", a.name)));
        }
        let mut table = vec![vec![None; n]; n];
        for (x, &i) in identities.iter().enumerate() {
            let Some(a) = arrows.get(i) else {
                return Err(Error::Validation(format!("identity of object {x} out of range")));
            };
            if a.dom != x || a.cod != x {
                return Err(Error::Validation(format!("identity {} of {} must be an endomorphism of it", a.name, objects[x])));
            }
        }
        for (f, a) in arrows.iter().enumerate() {
            table[identities[a.cod]][f] = Some(f);
            table[f][identities[a.dom]] = Some(f);
        }
        for &(g, f, h) in compose {
            if g >= n || f >= n || h >= n {
                return Err(Error::Validation(format!("composite ({g}, {f}, {h}) out of range")));
            }
            let (ag, af) = (&arrows[g], &arrows[f]);
            if af.cod != ag.dom {
                return Err(Error::Validation(format!("{} ∘ {} is not composable", ag.name, af.name)));
            }
            if arrows[h].dom != af.dom || arrows[h].cod != ag.cod {
                return Err(Error::Validation(format!("{} ∘ {} = {} has wrong endpoints", ag.name, af.name, arrows[h].name)));
            }
            match table[g][f] {
                Some(old) if old != h => {
                    return Err(Error::Validation(format!("{} ∘ {} is given twice", ag.name, af.name)));
                }
                _ => table[g][f] = Some(h),
            }
        }
        let c = FinCat { objects, arrows, identities, compose: table };
        c.validate()?;
        Ok(c)
    }

    /// Checks names, completeness of the table, unit laws and associativity.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for a in &self.arrows {
            if seen.insert(a.name.as_str(), ()).is_some() {
                return Err(Error::Validation(format!("duplicate arrow name {}", a.name)));
            }
        }
        let mut seen = HashMap::new();
        for o in &self.objects {
            if seen.insert(o.as_str(), ()).is_some() {
                return Err(Error::Validation(format!("duplicate object name {o}")));
            }
        }
        let n = self.arrows.len();
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                if composable != self.compose[g][f].is_some() {
                    return Err(Error::Validation(format!(
                        "composite {} ∘ {} must be given exactly when composable",
                        self.arrows[g].name, self.arrows[f].name
                    )));
                }
            }
        }
        for f in 0..n {
            let a = &self.arrows[f];
            if self.compose[self.identities[a.cod]][f] != Some(f) || self.compose[f][self.identities[a.dom]] != Some(f) {
                return Err(Error::Validation(format!("unit law fails at {}", a.name)));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.compose[g][f] else { continue };
                for h in 0..n {
                    let Some(hg) = self.compose[h][g] else { continue };
                    if self.compose[h][gf] != self.compose[hg][f] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[ArrowInfo] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &ArrowInfo {
        &self.arrows[f]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.arrows[f].cod
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].dom] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].dom == x && self.arrows[f].cod == y).collect()
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// The two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.cod, a.dom).into_iter().find(|&g| {
            self.compose[g][f] == Some(self.identities[a.dom]) && self.compose[f][g] == Some(self.identities[a.cod])
        })
    }

    pub fn invertible_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.inverse(f).is_some()).collect()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.inverse(f).is_some())
    }

    /// The wide subcategory on the marked arrows; fails unless the marked set
    /// contains all identities and is closed under composition.
    pub fn wide_subcategory(&self, keep: &[bool]) -> Result<FinCat> {
        if self.identities.iter().any(|&i| !keep[i]) {
            return Err(Error::Validation("a wide subcategory keeps every identity".into()));
        }
        let kept: Vec<usize> = (0..self.arrows.len()).filter(|&f| keep[f]).collect();
        let mut new_index = vec![usize::MAX; self.arrows.len()];
        for (i, &f) in kept.iter().enumerate() {
            new_index[f] = i;
        }
        let mut table = vec![vec![None; kept.len()]; kept.len()];
        for (i, &g) in kept.iter().enumerate() {
            for (j, &f) in kept.iter().enumerate() {
                if let Some(h) = self.compose[g][f] {
                    if !keep[h] {
                        return Err(Error::Validation("marked arrows are not closed under composition".into()));
                    }
                    table[i][j] = Some(new_index[h]);
                }
            }
        }
        Ok(FinCat {
            objects: self.objects.clone(),
            arrows: kept.iter().map(|&f| self.arrows[f].clone()).collect(),
            identities: self.identities.iter().map(|&i| new_index[i]).collect(),
            compose: table,
        })
    }

    /// `[n] = {0 < 1 < ... < n}`; arrows `id{i}` and `{i}-{j}` for `i < j`.
    pub fn ordinal(n: usize) -> FinCat {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                let name = if i == j { format!("id{i}") } else { format!("{i}-{j}") };
                index.insert((i, j), arrows.len());
                arrows.push(ArrowInfo { name, dom: i, cod: j });
            }
        }
        Self::from_relation(objects, arrows, |(i, _), (_, k)| index[&(i, k)], &index)
    }

    /// The codiscrete (chaotic) groupoid on `k` objects: exactly one arrow
    /// between any two objects.
    pub fn codiscrete(k: usize) -> FinCat {
        let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..k {
            for j in 0..k {
                let name = if i == j { format!("id{i}") } else { format!("{i}-{j}") };
                index.insert((i, j), arrows.len());
                arrows.push(ArrowInfo { name, dom: i, cod: j });
            }
        }
        Self::from_relation(objects, arrows, |(i, _), (_, k)| index[&(i, k)], &index)
    }

    /// `k` objects and only identities.
    pub fn discrete(k: usize) -> FinCat {
        let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let arrows = (0..k).map(|i| ArrowInfo { name: format!("id{i}"), dom: i, cod: i }).collect();
        let index: HashMap<(usize, usize), usize> = (0..k).map(|i| ((i, i), i)).collect();
        Self::from_relation(objects, arrows, |(i, _), _| i, &index)
    }

    pub fn terminal() -> FinCat {
        Self::discrete(1)
    }

    // Thin categories: arrows are determined by their endpoints.
    fn from_relation(
        objects: Vec<String>,
        arrows: Vec<ArrowInfo>,
        comp: impl Fn((usize, usize), (usize, usize)) -> usize,
        index: &HashMap<(usize, usize), usize>,
    ) -> FinCat {
        let n = arrows.len();
        let mut table = vec![vec![None; n]; n];
        for f in 0..n {
            for g in 0..n {
                if arrows[f].cod == arrows[g].dom {
                    table[g][f] = Some(comp((arrows[f].dom, arrows[f].cod), (arrows[g].dom, arrows[g].cod)));
                }
            }
        }
        let identities = (0..objects.len()).map(|x| index[&(x, x)]).collect();
        FinCat { objects, arrows, identities, compose: table }
    }

    /// The cyclic group `Z/k` as a one-object groupoid; arrow `g{i}` is the
    /// `i`-th power of the generator, `e` the unit.
    pub fn cyclic_group(k: usize) -> FinCat {
        assert!(k >= 1, "cyclic group needs k >= 1");
        let arrows = (0..k)
            .map(|i| ArrowInfo { name: if i == 0 { "e".into() } else { format!("g{i}") }, dom: 0, cod: 0 })
            .collect();
        let table = (0..k).map(|g| (0..k).map(|f| Some((g + f) % k)).collect()).collect();
        FinCat { objects: vec!["*".into()], arrows, identities: vec![0], compose: table }
    }

    /// Disjoint union; names are prefixed by the given tags.
    pub fn disjoint_union(parts: &[(&str, &FinCat)]) -> FinCat {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut identities = Vec::new();
        let mut offsets = Vec::new();
        for (tag, c) in parts {
            let (ob, ar) = (objects.len(), arrows.len());
            offsets.push(ar);
            objects.extend(c.objects.iter().map(|o| format!("{tag}{o}")));
            arrows.extend(c.arrows.iter().map(|a| ArrowInfo { name: format!("{tag}{}", a.name), dom: a.dom + ob, cod: a.cod + ob }));
            identities.extend(c.identities.iter().map(|&i| i + ar));
        }
        let n = arrows.len();
        let mut table = vec![vec![None; n]; n];
        for ((_, c), &off) in parts.iter().zip(&offsets) {
            for g in 0..c.arrows.len() {
                for f in 0..c.arrows.len() {
                    table[g + off][f + off] = c.compose[g][f].map(|h| h + off);
                }
            }
        }
        FinCat { objects, arrows, identities, compose: table }
    }

    /// Non-identity composites `(g, f, g∘f)` in index order.
    pub fn composite_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for g in 0..self.arrows.len() {
            for f in 0..self.arrows.len() {
                if let Some(h) = self.compose[g][f] {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        out.push((g, f, h));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc(FINCAT_FORMAT, None)).expect("serializable")
    }

    fn to_doc(&self, format: &str, inverses: Option<Vec<[String; 2]>>) -> CatDoc {
        let name = |f: usize| self.arrows[f].name.clone();
        CatDoc {
            format: Some(format.into()),
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc { id: a.name.clone(), dom: self.objects[a.dom].clone(), cod: self.objects[a.cod].clone() })
                .collect(),
            identities: self.identities.iter().enumerate().map(|(x, &i)| (self.objects[x].clone(), name(i))).collect(),
            compose: self.composite_triples().into_iter().map(|(g, f, h)| [name(g), name(f), name(h)]).collect(),
            inverses,
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: CatDoc = serde_json::from_value(v.clone())?;
        match doc.format.as_deref() {
            None | Some(FINCAT_FORMAT) | Some(FINGROUPOID_FORMAT) => {}
            Some(other) => return Err(Error::Json(format!("expected format {FINCAT_FORMAT}, found {other}"))),
        }
        Self::from_doc(&doc)
    }

    fn from_doc(doc: &CatDoc) -> Result<Self> {
        let obj = |name: &str| {
            doc.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::Validation(format!("unknown object {name}")))
        };
        let arrows = doc
            .arrows
            .iter()
            .map(|a| Ok(ArrowInfo { name: a.id.clone(), dom: obj(&a.dom)?, cod: obj(&a.cod)? }))
            .collect::<Result<Vec<_>>>()?;
        let arr = |name: &str| {
            arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::Validation(format!("unknown arrow {name}")))
        };
        let mut identities = vec![usize::MAX; doc.objects.len()];
        for (o, i) in &doc.identities {
            identities[obj(o)?] = arr(i)?;
        }
        if let Some(x) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Validation(format!("object {} has no identity", doc.objects[x])));
        }
        let triples = doc
            .compose
            .iter()
            .map(|[g, f, h]| Ok((arr(g)?, arr(f)?, arr(h)?)))
            .collect::<Result<Vec<_>>>()?;
        FinCat::new(doc.objects.clone(), arrows, identities, &triples)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: String,
    dom: String,
    cod: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<String>,
    objects: Vec<String>,
    arrows: Vec<ArrowDoc>,
    identities: BTreeMap<String, String>,
    #[serde(default)]
    compose: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inverses: Option<Vec<[String; 2]>>,
}

/// A finite groupoid: a category together with its inverse table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupoid {
    cat: FinCat,
    inverses: Vec<usize>,
}

impl FinGroupoid {
    /// Fails with a hypothesis error naming a non-invertible arrow.
    pub fn from_cat(cat: FinCat) -> Result<Self> {
        let inverses = (0..cat.arrow_count())
            .map(|f| cat.inverse(f).ok_or_else(|| Error::Hypothesis(format!("arrow {} is not invertible", cat.arrow(f).name))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinGroupoid { cat, inverses })
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn into_cat(self) -> FinCat {
        self.cat
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverses[f]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |f: usize| self.cat.arrow(f).name.clone();
        let inv = (0..self.inverses.len()).map(|f| [name(f), name(self.inverses[f])]).collect();
        serde_json::to_value(self.cat.to_doc(FINGROUPOID_FORMAT, Some(inv))).expect("serializable")
    }

    /// Parses and checks the listed inverses against the composition table.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: CatDoc = serde_json::from_value(v.clone())?;
        if doc.format.as_deref() != Some(FINGROUPOID_FORMAT) {
            return Err(Error::Json(format!("expected format {FINGROUPOID_FORMAT}")));
        }
        let cat = FinCat::from_doc(&doc)?;
        let g = FinGroupoid::from_cat(cat)?;
        for [f, finv] in doc.inverses.unwrap_or_default() {
            let (Some(a), Some(b)) = (g.cat.find_arrow(&f), g.cat.find_arrow(&finv)) else {
                return Err(Error::Validation(format!("unknown arrow in inverse pair ({f}, {finv})")));
            };
            if g.inverses[a] != b {
                return Err(Error::Validation(format!("{finv} is not inverse to {f}")));
            }
        }
        Ok(g)
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn is_valid(&self, src: &FinCat, tgt: &FinCat) -> bool {
        (0..src.arrow_count()).all(|f| {
            let a = src.arrow(f);
            let b = tgt.arrow(self.arrows[f]);
            b.dom == self.objects[a.dom] && b.cod == self.objects[a.cod]
        }) && (0..src.object_count()).all(|x| self.arrows[src.identity(x)] == tgt.identity(self.objects[x]))
            && (0..src.arrow_count()).all(|g| {
                (0..src.arrow_count()).all(|f| match src.compose(g, f) {
                    Some(h) => tgt.compose(self.arrows[g], self.arrows[f]) == Some(self.arrows[h]),
                    None => true,
                })
            })
    }
}

/// Every functor `src -> tgt`, by backtracking over object and arrow
/// assignments in index order.
pub fn enumerate_functors(src: &FinCat, tgt: &FinCat) -> Vec<Functor> {
    let mut out = Vec::new();
    let mut objects = vec![0; src.object_count()];
    enumerate_objects(src, tgt, 0, &mut objects, &mut out);
    out
}

fn enumerate_objects(src: &FinCat, tgt: &FinCat, x: usize, objects: &mut Vec<usize>, out: &mut Vec<Functor>) {
    if x == src.object_count() {
        let mut arrows = vec![usize::MAX; src.arrow_count()];
        enumerate_arrows(src, tgt, 0, objects, &mut arrows, out);
        return;
    }
    for y in 0..tgt.object_count() {
        objects[x] = y;
        enumerate_objects(src, tgt, x + 1, objects, out);
    }
}

fn enumerate_arrows(src: &FinCat, tgt: &FinCat, f: usize, objects: &[usize], arrows: &mut Vec<usize>, out: &mut Vec<Functor>) {
    if f == src.arrow_count() {
        out.push(Functor { objects: objects.to_vec(), arrows: arrows.clone() });
        return;
    }
    let a = src.arrow(f);
    let candidates = if src.is_identity(f) { vec![tgt.identity(objects[a.dom])] } else { tgt.hom(objects[a.dom], objects[a.cod]) };
    'next: for c in candidates {
        arrows[f] = c;
        // every composite among assigned arrows must be respected
        for g in 0..=f {
            for (p, q) in [(g, f), (f, g)] {
                if let Some(h) = src.compose(p, q) {
                    if h <= f && tgt.compose(arrows[p], arrows[q]) != Some(arrows[h]) {
                        continue 'next;
                    }
                }
            }
        }
        enumerate_arrows(src, tgt, f + 1, objects, arrows, out);
    }
    arrows[f] = usize::MAX;
}

/// The maximal subgroupoid: all objects and the invertible arrows.
pub fn core(c: &FinCat) -> FinGroupoid {
    let inv: Vec<bool> = (0..c.arrow_count()).map(|f| c.inverse(f).is_some()).collect();
    let sub = c.wide_subcategory(&inv).expect("invertible arrows form a subcategory");
    FinGroupoid::from_cat(sub).expect("core is a groupoid")
}
