use thiserror::Error;

/// Errors raised by family operations, parsers and the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the range the operation accepts.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The input does not satisfy the operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed family text or grid expression.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The operation has no closed form or evaluator for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The compatibility graph would exceed the enumeration guard.
    #[error("enumeration refused: C({n},{k}) = {vertices} k-sets exceeds the guard of {limit}")]
    Guard {
        n: u32,
        k: u32,
        vertices: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
