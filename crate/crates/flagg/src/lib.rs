//! Exact symbolic computation for factorial flagged Grothendieck polynomials.
//!
//! The crate computes the polynomial G attached to a flagged partition
//! (a weakly decreasing shape `lambda` together with a weakly increasing
//! flag `f`) by three independent routes and lets callers cross-check them:
//!
//! * [`tableaux::grothendieck_tableau`] sums weights over flagged set-valued
//!   tableaux (the defining formula);
//! * [`determinant::grothendieck_determinant`] evaluates a Jacobi-Trudi type
//!   determinant whose entries are coefficients of a truncated generating
//!   series in an auxiliary variable;
//! * [`perm::grothendieck_divdiff`] applies K-theoretic divided-difference
//!   operators to a product of linear factors.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision integers
//! and truncation (needed to make the generating series finite) is a ring
//! quotient by total degree in the x and b variables.

pub mod determinant;
mod kernel;
pub mod perm;
pub mod poly;
pub mod render;
pub mod series;
pub mod tableaux;

use thiserror::Error;

/// Crate-wide error type.
///
/// `InvalidArgument` and `Domain` indicate bad caller input; an
/// `InternalConsistency` error always signals an implementation bug (for
/// example a nonzero remainder in a division that is provably exact).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
