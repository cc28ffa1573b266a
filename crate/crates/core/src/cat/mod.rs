pub mod builtin;
mod category;
mod filtered;
mod functor;
mod product;
mod search;
mod setdiag;

pub use category::{CategoryBuilder, FinCategory, FullSubcategory, MorId, Morphism, ObjId, RawCategory};
pub use filtered::{
    canonical_diagram, cofinal_by_reachability, is_cofinal, is_filtered, CanonicalDiagram, PresentationContext, Verdict,
};
pub(crate) use functor::violation;
pub use functor::{
    same_category, validate_category, validate_functor, validate_nat_trans, FinFunctor, NatTransformation,
    ValidationReport, Violation,
};
pub use product::{product_category, product_table_estimate, Product};
pub use search::{
    compare_categories, enumerate_functors, enumerate_transformations, find_isomorphism, is_isomorphism, skeleton,
    CompareMode, Comparison, Skeleton,
};
pub use setdiag::{colimit_comparison, colimit_set_diagram, Cocone, ComparisonMap, SetDiagram};
