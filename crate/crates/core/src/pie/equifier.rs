use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{product_category, same_category, FinCategory, FullSubcategory, NatTransformation, ObjId};
use crate::error::{input, Result};

/// A full subcategory described by its kept objects; materialized on demand.
#[derive(Debug, Clone)]
pub struct SubcategoryView {
    ambient: Arc<FinCategory>,
    kept: Vec<ObjId>,
}

impl SubcategoryView {
    pub fn new(ambient: Arc<FinCategory>, kept: &[ObjId]) -> Result<Self> {
        if kept.iter().any(|x| x.index() >= ambient.num_objects()) {
            return input("kept object outside the ambient category".to_owned());
        }
        let mut kept = kept.to_vec();
        kept.sort();
        kept.dedup();
        Ok(SubcategoryView { ambient, kept })
    }

    pub fn ambient(&self) -> &Arc<FinCategory> {
        &self.ambient
    }

    pub fn kept_objects(&self) -> &[ObjId] {
        &self.kept
    }

    pub fn contains(&self, x: ObjId) -> bool {
        self.kept.binary_search(&x).is_ok()
    }

    pub fn materialize(&self, name: impl Into<String>) -> Result<FullSubcategory> {
        self.ambient.full_subcategory(name, &self.kept)
    }
}

fn check_parallel(phi: &NatTransformation, psi: &NatTransformation) -> Result<()> {
    if phi.source() != psi.source() || phi.target() != psi.target() {
        return input("equifier needs parallel transformations".to_owned());
    }
    Ok(())
}

/// Objects `E` with `phi_E = psi_E`.
pub fn equifier(phi: &NatTransformation, psi: &NatTransformation) -> Result<SubcategoryView> {
    check_parallel(phi, psi)?;
    let k = phi.source().source().clone();
    let kept: Vec<ObjId> = k.objects().filter(|&x| phi.component(x) == psi.component(x)).collect();
    SubcategoryView::new(k, &kept)
}

/// Intersection of the equifiers of all pairs; the empty family keeps
/// every object of `source`.
pub fn joint_equifier(
    source: &Arc<FinCategory>,
    pairs: &[(NatTransformation, NatTransformation)],
) -> Result<SubcategoryView> {
    for (phi, psi) in pairs {
        check_parallel(phi, psi)?;
        if !same_category(phi.source().source(), source) {
            return input("joint equifier pairs must share the source category".to_owned());
        }
    }
    let kept: Vec<ObjId> = source
        .objects()
        .filter(|&x| pairs.iter().all(|(phi, psi)| phi.component(x) == psi.component(x)))
        .collect();
    SubcategoryView::new(source.clone(), &kept)
}

/// The joint equifier computed as a single equifier after packing all
/// targets into their product.
pub fn joint_equifier_packed(
    source: &Arc<FinCategory>,
    pairs: &[(NatTransformation, NatTransformation)],
    budget: &Budget,
) -> Result<SubcategoryView> {
    if pairs.is_empty() {
        return joint_equifier(source, pairs);
    }
    let targets: Vec<Arc<FinCategory>> = pairs.iter().map(|(p, _)| p.source().target().clone()).collect();
    let prod = product_category(&targets, budget)?;
    let phis: Vec<NatTransformation> = pairs.iter().map(|(p, _)| p.clone()).collect();
    let psis: Vec<NatTransformation> = pairs.iter().map(|(_, q)| q.clone()).collect();
    let phi = prod.pair_transformations(&phis)?;
    let psi = prod.pair_transformations(&psis)?;
    equifier(&phi, &psi)
}
