//! Exact algebra for fusion rings.
//!
//! The crate models based rings with nonnegative structure constants and a
//! duality involution, computes their Frobenius-Perron data, universal
//! gradings and formal codegrees exactly over real quadratic fields, and
//! runs the Drinfeld-center induction obstruction on small rings. An
//! exhaustive enumerator reproduces small-rank classifications within an
//! explicit coefficient bound.

pub mod exactnum;
pub mod catalog;
pub mod fusion;
pub mod codegrees;
pub mod format;
pub mod center;
pub mod enumerate;
