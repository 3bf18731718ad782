//! Exact structure-constant computations for Rota-Baxter family
//! Hom-associative algebras over the rational function field Q(lambda).
//!
//! The crate represents finite-dimensional algebras carrying a twisting
//! map and a semigroup-indexed operator family by structure constants,
//! and provides checkers for every defining identity, unified and
//! bicrossed products, one-dimensional flag datums with the shipped
//! classification table, and deformation maps with index computation.
//!
//! Everything is exact: coefficients live in Q(lambda) with canonical
//! reduced representatives, so identity checks are equality of structure
//! constants, never numeric tolerance. Checkers sweep basis tuples in
//! parallel when the `parallel` feature (default) is enabled; reports are
//! merged in a fixed order either way.

pub mod algebra;
pub mod deform;
pub mod extending;
pub mod flag;
pub mod linalg;
pub mod matched;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod semigroup;
pub mod table2;

pub use algebra::{check_morphism, AlgebraError, Bimodule, HomAlgebra};
pub use extending::{
    check_datum_equivalence, datum_to_extension, extension_to_datum,
    extension_to_datum_canonical, EquivOutcome, EquivWitness, ExtendError, ExtendingDatum,
    UnifiedProduct,
};
pub use report::{Report, Violation};
pub use scalar::{Poly, Rat, Scalar, ScalarError};
pub use semigroup::FiniteSemigroup;
