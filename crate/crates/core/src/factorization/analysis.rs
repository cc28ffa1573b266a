use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cat::{
    canonical_diagram, is_cofinal, is_filtered, same_category, CanonicalDiagram, FinFunctor, MorId, ObjId,
    PresentationContext, Verdict,
};
use crate::error::{input, Result};
use crate::pie::Inserter;

/// The canonical diagrams of an inserter object `(K, φ)` and of its carrier
/// `K`, the functor between their index categories, and the two verdicts.
#[derive(Debug, Clone)]
pub struct CanonicalAnalysis {
    pub delta_e: CanonicalDiagram,
    pub delta_k: CanonicalDiagram,
    /// `Δ_E → Δ_K`, forgetting structure maps.
    pub comparison: FinFunctor,
    pub filtered: Verdict,
    pub cofinal: Verdict,
}

impl CanonicalAnalysis {
    pub fn summary(&self) -> AnalysisSummary {
        AnalysisSummary {
            delta_e_objects: self.delta_e.index.num_objects(),
            delta_e_morphisms: self.delta_e.index.num_morphisms(),
            delta_k_objects: self.delta_k.index.num_objects(),
            delta_k_morphisms: self.delta_k.index.num_morphisms(),
            filtered: self.filtered.clone(),
            cofinal: self.cofinal.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSummary {
    pub delta_e_objects: usize,
    pub delta_e_morphisms: usize,
    pub delta_k_objects: usize,
    pub delta_k_morphisms: usize,
    pub filtered: Verdict,
    pub cofinal: Verdict,
}

/// Small objects of the inserter are the pairs with a small carrier.
pub fn inserter_canonical_analysis(ins: &Inserter, e: ObjId, ctx: &PresentationContext) -> Result<CanonicalAnalysis> {
    let u = &ins.forgetful;
    if !same_category(u.target(), ctx.ambient()) {
        return input("the context must live on the base of the inserter".to_owned());
    }
    if e.index() >= ins.category.num_objects() {
        return input("object is not in the inserter".to_owned());
    }
    let small_e: Vec<ObjId> = ins.category.objects().filter(|&x| ctx.is_small(u.obj(x))).collect();
    let ctx_e = PresentationContext::new(ins.category.clone(), &small_e)?;
    let delta_e = canonical_diagram(&ctx_e, e)?;
    let delta_k = canonical_diagram(ctx, u.obj(e))?;
    let (de, dk) = (&delta_e.index, &delta_k.index);
    let k_obj: HashMap<MorId, ObjId> = dk.objects().map(|x| (delta_k.arrows[x.index()], x)).collect();
    let om: Vec<ObjId> = de.objects().map(|x| k_obj[&u.mor(delta_e.arrows[x.index()])]).collect();
    let mm: Vec<MorId> = de
        .morphisms()
        .map(|m| {
            let (s, t) = (om[de.src(m).index()], om[de.tgt(m).index()]);
            let a = u.mor(delta_e.diagram.mor(m));
            *dk.hom(s, t)
                .iter()
                .find(|&&n| delta_k.diagram.mor(n) == a)
                .expect("forgetful image is a triangle")
        })
        .collect();
    let comparison = FinFunctor::new(de.clone(), dk.clone(), om, mm)?;
    Ok(CanonicalAnalysis {
        filtered: is_filtered(de),
        cofinal: is_cofinal(&comparison),
        delta_e,
        delta_k,
        comparison,
    })
}

/// Result of the membership criterion: holds, or an unfactorizable
/// morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub witness: Option<MorId>,
}

/// Whether every morphism from a small object into `e` factors through a
/// member of `subset`.
pub fn verify_membership_criterion(ctx: &PresentationContext, subset: &[ObjId], e: ObjId) -> Result<Membership> {
    let c = ctx.ambient();
    if let Some(x) = subset.iter().find(|&&x| !ctx.is_small(x)) {
        return input(format!("{} is not a small object", c.object_name(*x)));
    }
    if e.index() >= c.num_objects() {
        return input("object is not in the ambient category".to_owned());
    }
    for &t in ctx.small_objects() {
        for &m in c.hom(t, e) {
            let ok = subset.iter().any(|&x| {
                c.hom(t, x)
                    .iter()
                    .any(|&a| c.hom(x, e).iter().any(|&b| c.compose(b, a) == Some(m)))
            });
            if !ok {
                return Ok(Membership {
                    holds: false,
                    witness: Some(m),
                });
            }
        }
    }
    Ok(Membership {
        holds: true,
        witness: None,
    })
}
