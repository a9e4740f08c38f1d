//! Exact computation around central factorial numbers.
//!
//! The central factorial polynomials `x^[n] = x (x + n/2 - 1)_{n-1}` play the
//! same role for the "central" calculus that falling factorials play for the
//! ordinary finite-difference calculus.  This crate provides the machinery to
//! work with them exactly, over arbitrary-precision rationals:
//!
//! * [`series`] — truncated formal power series (composition, compositional
//!   inverse, log/exp/powers) used as exponential generating functions;
//! * [`poly`] — dense polynomials and conversions between the monomial,
//!   central factorial, falling and rising factorial bases, including their
//!   degenerate (λ-deformed) variants;
//! * [`triangles`] — the classical connection-coefficient triangles (Stirling,
//!   central factorial, Lah, and friends), each computed by two independent
//!   routes that are cross-checked against each other;
//! * [`umbral`] — Sheffer sequences presented by generating-function pairs,
//!   the linear-functional calculus on them, and the central factorial
//!   numbers *associated with* a polynomial sequence (the coefficients that
//!   connect the sequence to the central factorial basis and back);
//! * [`identity`] — a self-verification suite that replays the identities the
//!   whole construction rests on and reports the first counterexample when
//!   one fails.
//!
//! Everything is exact: no floats anywhere.  Results are [`Rational`]
//! (`num_rational::BigRational`) throughout.
//!
//! [`Rational`]: rational::Rational

pub mod error;
pub mod identity;
pub mod poly;
pub mod rational;
pub mod series;
pub mod triangles;
pub mod umbral;

pub use error::Error;
pub use rational::Rational;

/// Truncation order used for generating-function work when the caller does
/// not ask for a specific one.
///
/// Connection coefficients for rows `0..=n_max` need series coefficients a
/// little past `n_max`; doubling leaves comfortable headroom for composition
/// and inversion without being wasteful.
pub fn default_order(n_max: usize) -> usize {
    2 * n_max + 2
}
