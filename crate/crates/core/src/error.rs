use thiserror::Error;

/// Errors surfaced by the construction and integration primitives.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A relation between arguments required by an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A numerical routine failed to reach its target tolerance.
    #[error("numeric error: {message} (achieved tolerance {achieved:.3e})")]
    Numeric { message: String, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
