//! Strict finite 2-categories, 2-functors into finite categories, conical
//! lax, oplax and pseudo limits, and weighted pseudolimits.

pub mod builtin;
mod conical;
mod two_category;
mod two_functor;
mod weighted;

pub use conical::{
    compare_pseudo_filters, conical_pie, lax_limit_direct, lax_limit_via_pie, oplax_limit_direct, oplax_limit_via_pie,
    pseudo_limit_direct, pseudo_limit_oplax_side, pseudo_limit_via_pie, ConicalLimit, FilterComparison, LimitKind,
    Variance, LIMIT_FAMILIES,
};
pub use two_category::{validate_two_category, CellId, TwoCategory, TwoCategoryBuilder, TwoCell};
pub use two_functor::{validate_two_functor, TwoFunctor};
pub use weighted::{
    pseudo_limit_as_weighted, terminal_weight, terminal_weight_agrees, validate_modification, validate_pseudonatural,
    weighted_pseudolimit, Modification, PseudoNatTransformation, WeightedLimit,
};
