//! Exact-arithmetic computation of conformal-block ranks on stable nodal
//! curves, organized around factorization over dual graphs.
//!
//! The library provides:
//!
//! - [`weights`]: dominant integral weights of `sl_r` at a level, their duals,
//!   pairings against `x_{r-1} = (1/r)(r-1, -1, ..., -1)`, and the admissible
//!   per-node perturbation intervals used by covering pairs.
//! - [`fusion`]: level-truncated fusion coefficients `N_{lm}^n` computed by two
//!   independent algorithms (affine Weyl folding and rim-hook reduction),
//!   fusion matrices, and the genus-raising handle operator.
//! - [`qgrass`]: small quantum cohomology of Grassmannians with q-degree
//!   tracking, Gromov-Witten nonvanishing bounds, and the multiplicative
//!   eigenvalue (Horn-type) inequality.
//! - [`curve`]: dual graphs of stable curves and their edge labelings by dual
//!   pairs of weights.
//! - [`factorize`]: ranks of block spaces at nodal curves as sums of products
//!   of smooth-component ranks, with per-labeling decomposition tables.
//! - [`polarize`]: covering-pair polarizations, pole-order ledgers certifying
//!   that sections extend across compactifications, multi-component slope
//!   semistability checks, and Smith normal form over `Q[t]`.
//! - [`grading`]: section-ring Hilbert functions, exact quasi-polynomial
//!   fitting, Veronese reindexing, Hilbert bases of pointed rational cones,
//!   and the explicit `sl_2` Chern-coefficient polynomials.
//!
//! All arithmetic is exact: rationals are [`num_rational::BigRational`],
//! ranks are [`num_bigint::BigInt`]. There is no floating point anywhere.

pub mod cli;
pub mod curve;
pub mod factorize;
pub mod fusion;
pub mod grading;
pub mod partitions;
pub mod polarize;
pub mod poly;
pub mod qgrass;
pub mod rat;
pub mod snf;
pub mod weights;

use thiserror::Error;

/// Domain errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight level {level} exceeds the ring level {max}")]
    LevelViolation { level: u32, max: u32 },
    #[error("invalid weight: {0}")]
    BadWeight(String),
    #[error("dual graph is not connected")]
    Disconnected,
    #[error("vertex {0} violates stability (2g - 2 + n <= 0)")]
    UnstableVertex(usize),
    #[error("arithmetic genus {genus} is below the required bound {bound}")]
    GenusBelowBound { genus: u32, bound: u32 },
    #[error("endpoint epsilon choices require an even level; got {0}")]
    OddLevelEndpoint(u32),
    #[error("inconsistent pole-exponent bookkeeping: {0}")]
    InconsistentExponents(String),
    #[error("matrix is singular over the fraction field")]
    SingularMatrix,
    #[error("slope undefined: sum of a_i * r_i(E) is zero")]
    SlopeUndefined,
    #[error("Euler characteristic of E does not match sum of gamma_i * r_i(E)")]
    EulerMismatch,
    #[error("sheaf data is not of uniform multi-rank")]
    NonUniformRank,
    #[error("twist weight alpha_{index} = {value} is not integral at this scale")]
    NonIntegralTwist { index: usize, value: String },
    #[error("cone is not pointed: {0}")]
    ConeNotPointed(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
