//! Functor categories, linear path categories of quivers and their
//! representations in finite-dimensional matrices.

mod funcat;
mod linear;
mod matrix;
mod quiver;
mod rep;
mod scalar;

pub use funcat::{
    fun_category_direct, fun_category_pie, fun_category_via_pie, fun_pie_estimate, FunCategory, FUN_FAMILIES,
};
pub use linear::{free_path_category, hermite, quotient_by_relations, reduce, LinearCategory};
pub use matrix::{matrix_category, Matrix, MatrixCategory};
pub use quiver::{
    a2, complex_presentation, path_order, point, square, square_commutes, Arrow, Path, Quiver, Relation, RelationSet,
};
pub use rep::{
    evaluate_path, evaluate_relation, relation_family, rep_category_direct, rep_category_pie, rep_category_via_pie,
    RepCategory, Representation,
};
pub use scalar::{Coefficient, FiniteField, Fp, F2, F3, F5, F7, SUPPORTED_PRIMES};
