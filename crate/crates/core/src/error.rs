use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("invalid input: {0}")]
    Input(String),
    /// A value failed a mathematical precondition (unitarity, Hermiticity, ...).
    #[error("validation failed: {0}")]
    Validation(String),
    /// An iterative routine did not converge.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// The construct is valid but outside what the compiler can lower.
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
