use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation, or an exact
    /// integer result that would overflow 128-bit intermediates.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input accepted mathematically but over a configured resource budget
    /// (sieve memory, term counts, direct-summation bounds).
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A floating-point result that should have been an exact integer did
    /// not round cleanly.
    #[error("numerical precision: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}
