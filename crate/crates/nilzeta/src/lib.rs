//! Exact computation of local normal-subgroup zeta functions of free
//! class-2 nilpotent groups on `d` generators.
//!
//! The central object is the bivariate rational function `W_d(P, T)` with
//! the property that substituting `P = p` and `T = p^{-s}` yields the local
//! normal zeta function of the group at the prime `p`.  The crate builds
//! `W_d` symbolically as a sum of explicitly parametrised rational summands,
//! one per admissible subset pair, and provides:
//!
//! * exact Laurent-polynomial and factored-rational arithmetic ([`laurent`]),
//! * Gaussian binomials, flag counts and Hall subgroup counts ([`qseries`]),
//! * the summand parametrisation and assembly of `W_d` ([`zetacore`]),
//! * analytic verification: functional equation, abscissa of convergence,
//!   pole dominance ([`analysis`]),
//! * independent brute-force enumeration oracles over finite quotients of
//!   the associated Lie ring ([`lieoracle`]).
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! floating point appears only in one optional diagnostic.

pub mod analysis;
pub mod laurent;
pub mod lieoracle;
pub mod qseries;
pub mod zetacore;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Errors surfaced by fallible entry points.
///
/// Enumeration routines refuse inputs whose cost estimate exceeds a fixed
/// budget; that refusal is a [`Error::Guard`], distinct from malformed
/// input, so callers can map the two to different exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("refusing oversized computation: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
