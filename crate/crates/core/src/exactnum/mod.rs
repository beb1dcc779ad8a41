//! Exact arithmetic over Q and real quadratic fields Q(sqrt D), integer
//! characteristic polynomials and small-degree factorization.
//!
//! Every value here is immutable; all operations are pure.

mod interval;
mod poly;
mod quad;
mod ratpoly;
mod real;

use thiserror::Error;

pub use interval::RealInterval;
pub use poly::{char_poly, factor_small, factor_small_bounded, Factorization, IntPoly, MAX_MATRIX_DIM};
pub use quad::{parse_rational, quad_arith, quad_cmp, render_rational, QuadNum, QuadOp};
pub use real::{real_roots, roots_as_quadnum, AlgebraicRoot, RealNumber};

/// Arbitrary precision rational number in canonical form.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("mixed radicands: sqrt({0}) and sqrt({1})")]
    MixedRadicand(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix of dimension {0} exceeds the supported bound of {MAX_MATRIX_DIM}")]
    RankTooLarge(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("complex root of {0}")]
    ComplexRoot(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("cannot parse number {0:?}")]
    Parse(String),
}
