use thiserror::Error;

/// Errors raised by protocol construction, solvers and point-game validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    Dimension {
        context: String,
        expected: usize,
        actual: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("normalization: {what} sums to {sum} (expected 1)")]
    Normalization { what: String, sum: f64 },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("too large for enumeration: {count} strategies exceed the limit of {limit}")]
    TooLarge { count: f64, limit: u64 },
    #[error("infeasible dual: {constraint} violated by {violation:e}")]
    InfeasibleDual { constraint: String, violation: f64 },
    #[error("invalid dual pairing: {0}")]
    DualPairing(String),
    #[error("solver did not converge: {0}")]
    Unconverged(String),
    #[error("point game transition {transition} invalid: {reason}")]
    InvalidTransition { transition: usize, reason: String },
    #[error("malformed move: {0}")]
    MalformedMove(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
