use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unresolved identifiers, non-total maps, mistyped data.
    #[error("input error: {0}")]
    Input(String),
    /// A configured enumeration or table budget was exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// An operation was called outside its stated precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A filtered presentation does not support the requested factorization.
    #[error("presentation error: {0}")]
    Presentation(String),
    /// Input that is well formed but outside what the toolkit can represent.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// Syntax errors while reading a file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
