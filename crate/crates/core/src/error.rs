use thiserror::Error;

use crate::exact::Rational;

/// Errors produced anywhere in the refinement pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Argument outside the domain an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    /// The tangent of a combination is undefined (angle is π/2 mod π).
    #[error("tangent pole: combination is an odd multiple of pi/2")]
    Pole,

    #[error("zero has no inverse power")]
    ZeroPower,

    /// The continued fraction terminated: arctan u / arctan v is rational.
    #[error("degenerate ratio: arctan({u}) / arctan({v}) is rational")]
    DegenerateRatio { u: Box<Rational>, v: Box<Rational> },

    #[error("invalid seed: {0}")]
    SeedInvalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An interval comparison could not be decided within the precision cap.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("precision budget exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
