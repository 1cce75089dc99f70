use thiserror::Error;

use crate::parser::ParseError;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("ambient mismatch: ({left}) vs ({right})")]
    AmbientMismatch { left: String, right: String },

    #[error("variable index {index} out of range for {len} variables")]
    VariableOutOfRange { index: usize, len: usize },

    #[error("replacement polynomial involves the eliminated variable `{0}`")]
    ReplacementUsesEliminated(String),

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("divisor is not in the reduced regime (every coefficient must lie in (0, 1]); apply periodic_reduce first")]
    NotReduced,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested closed form does not cover this instance.
    #[error("no closed form: {0}")]
    NoClosedForm(String),

    /// No computation route applies and no seed/certificate was supplied.
    #[error("no method applies: {0}")]
    MethodUnavailable(String),

    #[error("exponent {0} does not fit in a machine word")]
    ExponentOverflow(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, HodgeError>;
