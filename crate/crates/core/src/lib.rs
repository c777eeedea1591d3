//! Exact and high-precision computation engine for q-series identities,
//! L-function special values, Eichler integrals, and torus-knot quantum
//! invariants.
//!
//! The crate is organized around one exact carrier and one numeric carrier:
//!
//! - [`qseries::QSeries`] / [`qseries::XQSeries`]: truncated Laurent series in
//!   `q^(1/D)` (and in a second formal variable `x`) with [`rug::Rational`]
//!   coefficients. All series arithmetic is exact; truncation windows are
//!   propagated pessimistically and equality always takes an explicit
//!   comparison order, so an under-truncated comparison is an error, never a
//!   silent pass.
//! - [`analytic::HPComplex`]: arbitrary-precision complex numbers (MPFR
//!   backed) carrying their precision in bits, used for theta/eta evaluation,
//!   modular-transformation residuals, and Eichler integrals at rationals.
//!
//! On top of those sit:
//!
//! - [`exact`]: Bernoulli polynomials, rational polynomial arithmetic, and
//!   Taylor expansion of hyperbolic-sine ratios.
//! - [`characters`]: integer-valued periodic functions with mean zero, the
//!   built-in tables, minimal-model characters, and exhaustive verification
//!   of every character-level relation the identities rely on.
//! - [`lvalues`]: L-function values at negative integers via the finite
//!   Bernoulli sum, and the integer t-series families.
//! - [`identities`]: the identity registry — every q-series identity
//!   implemented as an exact LHS/RHS pair with a uniform [`identities::verify`]
//!   entry point producing machine-readable reports.
//! - [`analytic`]: theta/eta evaluation with certified tail cutoffs, the
//!   weight-1/2 modular vector and its S/T transformations, Eichler integrals
//!   evaluated through two independent channels, and the asymptotic-expansion
//!   checks.
//! - [`knotinv`]: Kashaev invariants of torus knots at roots of unity.
//!
//! ```
//! use qident::identities;
//!
//! let report = identities::verify("slater_86", &Default::default()).unwrap();
//! assert!(report.passed());
//! ```

pub mod analytic;
pub mod characters;
pub mod exact;
pub mod identities;
pub mod knotinv;
pub mod lvalues;
pub mod number;
pub mod qseries;
pub mod report;

pub use number::{Int, Rat};

/// Error type shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series is not invertible: leading coefficient is zero")]
    NonInvertible,
    #[error("requested order {requested} exceeds provable truncation {provable}")]
    InsufficientOrder { requested: Rat, provable: Rat },
    #[error("infinite product does not stabilize: factor valuation step is {0}")]
    NonStabilizing(Rat),
    #[error("character `{0}` produces a non-integral x-exponent at n = {1}")]
    FractionalXExponent(String, i64),
    #[error("periodic values for `{0}` do not sum to zero over one period")]
    NonZeroMean(String),
    #[error("unknown builtin character `{0}`")]
    UnknownCharacter(String),
    #[error("unsupported Legendre modulus {0}; expected 12 or 24")]
    UnsupportedLegendre(i64),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("precision {precision} bits unreachable: {reason}")]
    PrecisionUnreachable { precision: u32, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
