use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input violates a structural precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A configured enumeration or search cap was exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// Internal consistency failure; callers may fall back to an
    /// independent route.
    #[error("anomaly: {0}")]
    Anomaly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
