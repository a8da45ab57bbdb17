//! Exact scalars and dense matrices over ℚ and 𝔽ₚ.

mod elim;
mod field;
mod index_set;
mod json;
mod matrix;
mod scalar;

pub use field::{is_prime, FieldSpec, Prime, MAX_MODULUS};
pub use index_set::IndexSet;
pub use matrix::{solve_consistency, Consistency, Matrix};
pub use scalar::{rational_signum, Residue, Scalar};
