//! Crate-wide error type.

use thiserror::Error;

use crate::positivity::PositivityCertificate;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    /// The polynomial is not strictly positive on [0, inf); carries the
    /// certificate with its witness interval.
    #[error("polynomial is not positive on [0, inf): {0}")]
    NotPositive(PositivityCertificate),

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("denominator vanishes: {0}")]
    DenominatorZero(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
