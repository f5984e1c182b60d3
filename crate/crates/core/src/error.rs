use thiserror::Error;

/// Errors raised by the numeric and exact-arithmetic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A trigonometric sum cannot be rewritten under the requested substitution.
    #[error("incommensurate frequencies: {0}")]
    Incommensurate(String),

    /// Bisection could not find a verified sign change.
    #[error("no verified sign change: {0}")]
    NoSignChange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
