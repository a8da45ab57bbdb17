//! Exact linear algebra and extremal combinatorics around sums of
//! nonsingular matrices.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact scalars over ℚ and 𝔽ₚ, matrices, determinants, rank.
//! * [`detsum`]: the minor expansion of `det(A + B)`, the sum-determinant
//!   matrix `H` and its rank-one decomposition.
//! * [`sumgraph`]: nonsingular-sum graphs, matchings, covers and cliques.
//! * [`constructions`]: the two extremal matrix families.
//! * [`flats`]: `d`-flats in `ℚ^{2d}` and the removal-type counting checks.
//! * [`rng`]: the fixed SplitMix64 generator and seeded instance builders.

pub mod algebra;
pub mod constructions;
pub mod detsum;
pub mod error;
pub mod flats;
pub mod rng;
pub mod sumgraph;

pub use error::{Error, Result};
