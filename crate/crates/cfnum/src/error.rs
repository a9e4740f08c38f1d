//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in this crate, in one enum.
///
/// The split matters to callers: `CrossCheckMismatch` means two independent
/// computations of the same object disagreed (a bug or a broken invariant,
/// never bad user input), while the other variants are ordinary usage errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A string did not parse as a rational number.
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),

    /// A series operation needed a nonzero constant term (reciprocal, log).
    #[error("series has zero constant term where a unit is required")]
    ZeroConstantTerm,

    /// Composition `f(g)` requires `g(0) = 0`; likewise compositional
    /// inverse and the central log/exp transforms require a root at 0.
    #[error("inner series must have zero constant term")]
    NonzeroInnerConstant,

    /// Compositional inverse needs a series of the form `c1*t + ...` with
    /// `c1 != 0`.
    #[error("series is not invertible under composition (needs f(0)=0, f'(0)!=0)")]
    NotCompInvertible,

    /// `log` of a series whose constant term is not 1, or a rational power
    /// of a series whose constant term is not an exact rational power.
    #[error("series constant term {0} does not admit the requested root")]
    NoExactRoot(String),

    /// A computation asked for coefficients beyond the truncation order.
    #[error("operation needs order {needed} but series is truncated at {order}")]
    OrderTooSmall { needed: usize, order: usize },

    /// A polynomial exceeded the degree supported by the requested operation.
    #[error("polynomial degree {degree} exceeds supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },

    /// Unknown name passed to a lookup (triangle family, sequence, basis,
    /// route, ...).
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },

    /// A parameter value outside the domain of the family it parametrizes.
    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    /// The requested route does not exist for this sequence (for example a
    /// generating-function route for a sequence that has no Sheffer pair).
    #[error("route {route} is not available for sequence {sequence}: {reason}")]
    RouteUnavailable {
        route: &'static str,
        sequence: String,
        reason: &'static str,
    },

    /// Two independent computations of the same triangle disagreed.
    #[error("cross-check mismatch in {what} at (n={n}, k={k}): {lhs} vs {rhs}")]
    CrossCheckMismatch {
        what: String,
        n: usize,
        k: usize,
        lhs: String,
        rhs: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
