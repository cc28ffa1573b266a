use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCategory, MorId, ObjId};
use crate::error::{input, Result};

/// Same category by pointer or by value.
pub fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

pub(crate) fn violation(law: &str, witness: &[&str]) -> Violation {
    Violation {
        law: law.to_owned(),
        witness: witness.iter().map(|s| s.to_string()).collect(),
    }
}

/// Checks every category law on the stored tables.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut out = Vec::new();
    let name = |f: MorId| c.morphism_name(f);
    for x in c.objects() {
        let i = c.identity(x);
        if c.src(i) != x || c.tgt(i) != x {
            out.push(violation("identity typing", &[c.object_name(x), name(i)]));
        }
    }
    for &(g, f, h) in c.stray_compositions() {
        out.push(violation("composition domain", &[name(g), name(f), name(h)]));
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            match c.compose(g, f) {
                None => out.push(violation("composition totality", &[name(g), name(f)])),
                Some(h) => {
                    if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) {
                        out.push(violation("composition closure", &[name(g), name(f), name(h)]));
                    }
                }
            }
        }
    }
    for f in c.morphisms() {
        let (s, t) = (c.src(f), c.tgt(f));
        let (ids, idt) = (c.identity(s), c.identity(t));
        if c.src(idt) == t && c.compose(idt, f).is_some_and(|h| h != f) {
            out.push(violation("left identity", &[name(f)]));
        }
        if c.tgt(ids) == s && c.compose(f, ids).is_some_and(|h| h != f) {
            out.push(violation("right identity", &[name(f)]));
        }
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            let Some(gf) = c.compose(g, f) else { continue };
            for &h in c.outgoing(c.tgt(g)) {
                let Some(hg) = c.compose(h, g) else { continue };
                if let (Some(a), Some(b)) = (c.compose(h, gf), c.compose(hg, f)) {
                    if a != b {
                        out.push(violation("associativity", &[name(h), name(g), name(f)]));
                    }
                }
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// A table-backed functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self> {
        if object_map.len() != source.num_objects() {
            return input(format!(
                "functor {} → {}: object map is not total",
                source.name(),
                target.name()
            ));
        }
        if morphism_map.len() != source.num_morphisms() {
            return input(format!(
                "functor {} → {}: morphism map is not total",
                source.name(),
                target.name()
            ));
        }
        if object_map.iter().any(|x| x.index() >= target.num_objects())
            || morphism_map.iter().any(|f| f.index() >= target.num_morphisms())
        {
            return input("functor maps into unknown ids".to_owned());
        }
        Ok(FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    /// Functor from name tables; every source id must be mapped.
    pub fn from_names(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: &BTreeMap<String, String>,
        morphisms: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut object_map = Vec::with_capacity(source.num_objects());
        for x in source.objects() {
            let n = source.object_name(x);
            let img = objects
                .get(n)
                .ok_or_else(|| crate::Error::Input(format!("object map is not total: {n} unmapped")))?;
            object_map.push(
                target
                    .object_id(img)
                    .ok_or_else(|| crate::Error::Input(format!("object {img} not in target")))?,
            );
        }
        for k in objects.keys() {
            if source.object_id(k).is_none() {
                return input(format!("object map mentions unknown object {k}"));
            }
        }
        let mut morphism_map = Vec::with_capacity(source.num_morphisms());
        for f in source.morphisms() {
            let n = source.morphism_name(f);
            let img = morphisms
                .get(n)
                .ok_or_else(|| crate::Error::Input(format!("morphism map is not total: {n} unmapped")))?;
            morphism_map.push(
                target
                    .morphism_id(img)
                    .ok_or_else(|| crate::Error::Input(format!("morphism {img} not in target")))?,
            );
        }
        for k in morphisms.keys() {
            if source.morphism_id(k).is_none() {
                return input(format!("morphism map mentions unknown morphism {k}"));
            }
        }
        FinFunctor::new(source, target, object_map, morphism_map)
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    /// Constant functor at `x`.
    pub fn constant(source: &Arc<FinCategory>, target: &Arc<FinCategory>, x: ObjId) -> Self {
        FinFunctor {
            source: source.clone(),
            target: target.clone(),
            object_map: vec![x; source.num_objects()],
            morphism_map: vec![target.identity(x); source.num_morphisms()],
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&f.target, &g.source) {
            return input(format!(
                "cannot compose functors: {} ≠ {}",
                f.target.name(),
                g.source.name()
            ));
        }
        Ok(FinFunctor {
            source: f.source.clone(),
            target: g.target.clone(),
            object_map: f.object_map.iter().map(|&x| g.obj(x)).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.mor(m)).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    #[inline]
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.object_map[x.index()]
    }

    #[inline]
    pub fn mor(&self, f: MorId) -> MorId {
        self.morphism_map[f.index()]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    pub fn is_parallel(&self, other: &FinFunctor) -> bool {
        same_category(&self.source, &other.source) && same_category(&self.target, &other.target)
    }

    pub fn is_bijective(&self) -> bool {
        fn bij<T: Copy + Ord>(v: &[T], n: usize) -> bool {
            let mut s = v.to_vec();
            s.sort();
            s.dedup();
            s.len() == v.len() && v.len() == n
        }
        bij(&self.object_map, self.target.num_objects()) && bij(&self.morphism_map, self.target.num_morphisms())
    }

    /// Injective on every hom-set.
    pub fn is_faithful(&self) -> bool {
        let c = &self.source;
        c.objects().all(|x| {
            c.objects().all(|y| {
                let mut imgs: Vec<MorId> = c.hom(x, y).iter().map(|&f| self.mor(f)).collect();
                imgs.sort();
                imgs.dedup();
                imgs.len() == c.hom(x, y).len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let c = &self.source;
        c.objects().all(|x| {
            c.objects().all(|y| {
                let mut imgs: Vec<MorId> = c.hom(x, y).iter().map(|&f| self.mor(f)).collect();
                imgs.sort();
                imgs.dedup();
                imgs.len() == self.target.hom(self.obj(x), self.obj(y)).len()
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = &self.target;
        d.objects()
            .all(|y| self.object_map.iter().any(|&x| x == y || d.find_iso(x, y).is_some()))
    }

    /// Name tables suitable for serialization.
    pub fn name_tables(&self) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
        let objects = self
            .source
            .objects()
            .map(|x| {
                (
                    self.source.object_name(x).to_owned(),
                    self.target.object_name(self.obj(x)).to_owned(),
                )
            })
            .collect();
        let morphisms = self
            .source
            .morphisms()
            .map(|f| {
                (
                    self.source.morphism_name(f).to_owned(),
                    self.target.morphism_name(self.mor(f)).to_owned(),
                )
            })
            .collect();
        (objects, morphisms)
    }
}

pub fn validate_functor(f: &FinFunctor) -> ValidationReport {
    let (c, d) = (f.source(), f.target());
    let mut out = Vec::new();
    for m in c.morphisms() {
        let im = f.mor(m);
        if d.src(im) != f.obj(c.src(m)) || d.tgt(im) != f.obj(c.tgt(m)) {
            out.push(violation("functor typing", &[c.morphism_name(m)]));
        }
    }
    if !out.is_empty() {
        return ValidationReport::from_violations(out);
    }
    for x in c.objects() {
        if f.mor(c.identity(x)) != d.identity(f.obj(x)) {
            out.push(violation("functor identity", &[c.object_name(x)]));
        }
    }
    for m in c.morphisms() {
        for &g in c.outgoing(c.tgt(m)) {
            let Some(gm) = c.compose(g, m) else { continue };
            if d.compose(f.mor(g), f.mor(m)) != Some(f.mor(gm)) {
                out.push(violation(
                    "functor composition",
                    &[c.morphism_name(g), c.morphism_name(m)],
                ));
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// A natural transformation between parallel functors, one component per
/// source object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<MorId>,
}

impl NatTransformation {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<MorId>) -> Result<Self> {
        if !source.is_parallel(&target) {
            return input("natural transformation between non-parallel functors".to_owned());
        }
        let c = source.source().clone();
        let d = source.target().clone();
        if components.len() != c.num_objects() {
            return input("missing component".to_owned());
        }
        for x in c.objects() {
            let m = components[x.index()];
            if m.index() >= d.num_morphisms() || d.src(m) != source.obj(x) || d.tgt(m) != target.obj(x) {
                return input(format!(
                    "component at {} has the wrong source or target",
                    c.object_name(x)
                ));
            }
        }
        Ok(NatTransformation {
            source,
            target,
            components,
        })
    }

    pub fn from_names(source: FinFunctor, target: FinFunctor, components: &BTreeMap<String, String>) -> Result<Self> {
        let c = source.source().clone();
        let d = source.target().clone();
        let mut comps = Vec::with_capacity(c.num_objects());
        for x in c.objects() {
            let n = c.object_name(x);
            let m = components
                .get(n)
                .ok_or_else(|| crate::Error::Input(format!("missing component at {n}")))?;
            comps.push(
                d.morphism_id(m)
                    .ok_or_else(|| crate::Error::Input(format!("component {m} unknown")))?,
            );
        }
        NatTransformation::new(source, target, comps)
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let d = f.target();
        NatTransformation {
            source: f.clone(),
            target: f.clone(),
            components: f.source().objects().map(|x| d.identity(f.obj(x))).collect(),
        }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    #[inline]
    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x.index()]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    /// Vertical composite `tau · sigma`.
    pub fn vertical(tau: &NatTransformation, sigma: &NatTransformation) -> Result<Self> {
        if sigma.target != tau.source {
            return input("vertical composite of non-matching transformations".to_owned());
        }
        let d = sigma.source.target();
        let comps = sigma
            .source
            .source()
            .objects()
            .map(|x| d.comp(tau.component(x), sigma.component(x)))
            .collect();
        NatTransformation::new(sigma.source.clone(), tau.target.clone(), comps)
    }

    /// Whiskering `H ∘ sigma`.
    pub fn whisker_left(h: &FinFunctor, sigma: &NatTransformation) -> Result<Self> {
        let src = FinFunctor::compose(h, &sigma.source)?;
        let tgt = FinFunctor::compose(h, &sigma.target)?;
        let comps = sigma.components.iter().map(|&m| h.mor(m)).collect();
        NatTransformation::new(src, tgt, comps)
    }

    /// Whiskering `sigma ∘ K`.
    pub fn whisker_right(sigma: &NatTransformation, k: &FinFunctor) -> Result<Self> {
        let src = FinFunctor::compose(&sigma.source, k)?;
        let tgt = FinFunctor::compose(&sigma.target, k)?;
        let comps = k.object_map().iter().map(|&x| sigma.component(x)).collect();
        NatTransformation::new(src, tgt, comps)
    }

    /// Horizontal composite `tau * sigma` for `sigma: F ⇒ F'`, `tau: H ⇒ H'`,
    /// with component `tau_{F'x} ∘ H(sigma_x)`.
    pub fn horizontal(tau: &NatTransformation, sigma: &NatTransformation) -> Result<Self> {
        let src = FinFunctor::compose(&tau.source, &sigma.source)?;
        let tgt = FinFunctor::compose(&tau.target, &sigma.target)?;
        let e = tau.source.target();
        let comps = sigma
            .source
            .source()
            .objects()
            .map(|x| e.comp(tau.component(sigma.target.obj(x)), tau.source.mor(sigma.component(x))))
            .collect();
        NatTransformation::new(src, tgt, comps)
    }

    pub fn is_invertible(&self) -> bool {
        let d = self.source.target();
        self.components.iter().all(|&m| d.is_iso(m))
    }
}

pub fn validate_nat_trans(t: &NatTransformation) -> ValidationReport {
    let (f, g) = (t.source(), t.target());
    let (c, d) = (f.source(), f.target());
    let mut out = Vec::new();
    for m in c.morphisms() {
        let (x, y) = (c.src(m), c.tgt(m));
        let lhs = d.compose(t.component(y), f.mor(m));
        let rhs = d.compose(g.mor(m), t.component(x));
        if lhs.is_none() || lhs != rhs {
            out.push(violation("naturality", &[c.morphism_name(m)]));
        }
    }
    ValidationReport::from_violations(out)
}
