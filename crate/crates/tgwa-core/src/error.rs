use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("zero value not allowed")]
    ZeroValue,

    #[error("q must be nonzero")]
    ZeroQ,

    #[error("total degree {degree} exceeds the enumeration cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("datum family does not fit this decision procedure: {0}")]
    FamilyMismatch(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("inconsistent datum: {0}")]
    Inconsistent(String),

    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidGcm(String),

    #[error("Cartan profile has unknown entries")]
    UnknownEntries,

    #[error("internal assertion: {0}")]
    Internal(String),
}

impl Error {
    /// True for conditions that indicate an engine bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
