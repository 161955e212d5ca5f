use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Prime factorization in a number field is outside the supported range.
    #[error("factorization-unsupported: {0}")]
    FactorizationUnsupported(String),
    /// A bounded search finished without finding an object. This says nothing
    /// about existence.
    #[error("search-exhausted: {0}")]
    SearchExhausted(String),
    /// A configured compute budget or bound was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The Siegel series registry has no closed form for the requested shape.
    #[error("siegel-unsupported: {0}")]
    SiegelUnsupported(String),
    /// Numerical reconstruction did not stabilise.
    #[error("insufficient-precision: {0}")]
    InsufficientPrecision(String),
    /// Shimura matching could not separate eigensystems.
    #[error("match-ambiguous: {0}")]
    MatchAmbiguous(String),
    /// An internal consistency check failed (a bug or a precision problem).
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    /// A pinned regression value did not reproduce.
    #[error("regression mismatch: {0}")]
    Regression(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
