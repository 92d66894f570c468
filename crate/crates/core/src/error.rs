use thiserror::Error;

/// Errors produced by the library.
///
/// Domain errors (zero ideal, rank mismatch, ...) are distinguished from
/// budget errors so the CLI can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

pub type Result<T> = std::result::Result<T, ForgeError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(ForgeError::Domain(msg.into()))
}

pub(crate) fn budget_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ForgeError::Budget(msg.into()))
}
