use std::sync::Arc;

use crate::cat::{is_filtered, violation, FinCategory, FinFunctor, MorId, ObjId, ValidationReport};
use crate::error::Result;

/// An object presented as the colimit of a finite directed poset of
/// stages, with the colimit cocone.
#[derive(Debug, Clone)]
pub struct FilteredPresentation {
    stages: FinFunctor,
    apex: ObjId,
    legs: Vec<MorId>,
    max: ObjId,
}

fn presentation_error<T>(msg: String) -> Result<T> {
    Err(crate::Error::Presentation(msg))
}

/// The maximum of a directed poset, or a violation explaining why the
/// index is not one.
fn directed_poset_max(c: &FinCategory) -> std::result::Result<ObjId, String> {
    for x in c.objects() {
        for y in c.objects() {
            let n = c.hom(x, y).len();
            if n > 1 {
                return Err(format!("not thin at {} -> {}", c.object_name(x), c.object_name(y)));
            }
            if x != y && n == 1 && !c.hom(y, x).is_empty() {
                return Err(format!("{} and {} are isomorphic", c.object_name(x), c.object_name(y)));
            }
        }
    }
    let v = is_filtered(c);
    if !v.holds {
        return Err(format!("index is not directed: {}", v.witness.join(" ")));
    }
    c.objects()
        .find(|&m| c.objects().all(|x| !c.hom(x, m).is_empty()))
        .ok_or_else(|| "directed index without maximum".to_owned())
}

impl FilteredPresentation {
    /// `stages: Ξ → K` with `legs[ξ]: T_ξ → apex`. The index must be a
    /// directed poset, the legs a cocone, and the leg at the maximum an
    /// isomorphism.
    pub fn new(stages: FinFunctor, apex: ObjId, legs: Vec<MorId>) -> Result<Self> {
        let (xi, k) = (stages.source(), stages.target());
        if apex.index() >= k.num_objects() {
            return presentation_error("apex is not an object of the target".to_owned());
        }
        if legs.len() != xi.num_objects() {
            return presentation_error(format!("{} legs for {} stages", legs.len(), xi.num_objects()));
        }
        let max = match directed_poset_max(xi) {
            Ok(m) => m,
            Err(e) => return presentation_error(e),
        };
        let p = FilteredPresentation {
            stages,
            apex,
            legs,
            max,
        };
        let report = p.validate();
        if !report.ok {
            let v = &report.violations[0];
            return presentation_error(format!("{}: {}", v.law, v.witness.join(" ")));
        }
        Ok(p)
    }

    /// The presentation of `x` by itself: one stage, identity leg.
    pub fn trivial(k: &Arc<FinCategory>, x: ObjId) -> Result<Self> {
        let one = Arc::new(crate::cat::builtin::terminal());
        let f = FinFunctor::constant(&one, k, x);
        FilteredPresentation::new(f, x, vec![k.identity(x)])
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        self.stages.source()
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        self.stages.target()
    }

    pub fn stages(&self) -> &FinFunctor {
        &self.stages
    }

    pub fn apex(&self) -> ObjId {
        self.apex
    }

    pub fn leg(&self, xi: ObjId) -> MorId {
        self.legs[xi.index()]
    }

    pub fn legs(&self) -> &[MorId] {
        &self.legs
    }

    pub fn stage(&self, xi: ObjId) -> ObjId {
        self.stages.obj(xi)
    }

    pub fn max(&self) -> ObjId {
        self.max
    }

    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        !self.index().hom(a, b).is_empty()
    }

    /// `T(a ≤ b)`; panics unless `a ≤ b`.
    pub fn transition(&self, a: ObjId, b: ObjId) -> MorId {
        self.stages.mor(self.index().hom(a, b)[0])
    }

    /// Leg typing, cocone commutativity and the isomorphism at the maximum.
    pub fn validate(&self) -> ValidationReport {
        let (xi, k) = (self.index(), self.target());
        let mut out = Vec::new();
        for x in xi.objects() {
            let l = self.leg(x);
            if l.index() >= k.num_morphisms() || k.src(l) != self.stage(x) || k.tgt(l) != self.apex {
                out.push(violation("leg typing", &[xi.object_name(x)]));
            }
        }
        if !out.is_empty() {
            return ValidationReport::from_violations(out);
        }
        for u in xi.morphisms() {
            let (a, b) = (xi.src(u), xi.tgt(u));
            if k.compose(self.leg(b), self.stages.mor(u)) != Some(self.leg(a)) {
                out.push(violation("cocone commutes", &[xi.morphism_name(u)]));
            }
        }
        if !k.is_iso(self.leg(self.max)) {
            out.push(violation("maximum leg is an isomorphism", &[xi.object_name(self.max)]));
        }
        ValidationReport::from_violations(out)
    }

    /// The least stage, in index order, through whose leg `f` factors,
    /// with the factorization.
    pub fn first_factorization(&self, f: MorId) -> Option<(ObjId, MorId)> {
        let k = self.target();
        self.index().objects().find_map(|x| {
            let l = self.leg(x);
            k.hom(k.src(f), self.stage(x))
                .iter()
                .find(|&&t| k.compose(l, t) == Some(f))
                .map(|&t| (x, t))
        })
    }
}
