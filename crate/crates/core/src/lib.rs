//! Finite category theory at desk scale: finite categories and functors,
//! PIE limit constructions, lax and weighted 2-limits, functor and quiver
//! representation categories, and chain factorization over filtered
//! presentations.

pub mod budget;
pub mod cat;
pub mod diagram;
pub mod error;
pub mod factorization;
pub mod io;
pub mod limits2;
pub mod pie;

pub use budget::Budget;
pub use cat::{
    CategoryBuilder, FinCategory, FinFunctor, MorId, NatTransformation, ObjId, RawCategory, ValidationReport, Violation,
};
pub use error::{Error, Result};
