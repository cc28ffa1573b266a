//! Products, inserters and equifiers, and the constructions assembled from
//! them.

mod equifier;
mod inserter;
mod pseudopullback;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cat::{FinCategory, FinFunctor, FullSubcategory};

pub use equifier::{equifier, joint_equifier, joint_equifier_packed, SubcategoryView};
pub(crate) use inserter::for_each_tuple;
pub use inserter::{inserter, iso_inserter, joint_inserter, joint_inserter_packed, joint_iso_inserter, Inserter};
pub use pseudopullback::{
    isomorpher_to_pullback, pseudopullback_direct, pseudopullback_pie, pseudopullback_via_pie,
    pullback_isomorpher_reduction, pullback_to_isomorpher, Pseudopullback, Reduction, ReductionDirection, PP_FAMILIES,
};

/// Switches for the equifier families of a PIE pipeline. Everything is on by
/// default; tests switch single families off to see that each one matters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PieOptions {
    skip: BTreeSet<String>,
}

impl PieOptions {
    pub fn without(family: &str) -> Self {
        PieOptions {
            skip: [family.to_owned()].into_iter().collect(),
        }
    }

    pub fn enabled(&self, family: &str) -> bool {
        !self.skip.contains(family)
    }
}

/// The final category of a pipeline with object and morphism counts after
/// each stage.
#[derive(Debug, Clone)]
pub struct PieBuild {
    pub category: Arc<FinCategory>,
    pub sub: FullSubcategory,
    pub stages: Vec<(String, usize, usize)>,
}

/// A PIE construction together with the direct one and the canonical
/// comparison functor `direct → category`.
#[derive(Debug, Clone)]
pub struct ViaPie {
    pub category: Arc<FinCategory>,
    pub direct: Arc<FinCategory>,
    pub witness: FinFunctor,
    pub witness_is_iso: bool,
    pub stages: Vec<(String, usize, usize)>,
}
