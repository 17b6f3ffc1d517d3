use thiserror::Error;

/// Errors raised by the codec and its container format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    /// A caller violated a precondition (bad alphabet size, symbol out of range, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// The payload bits do not decode under the expected code sequence.
    #[error("corrupt stream: {0}")]
    CorruptStream(String),
    /// The container envelope is malformed.
    #[error("format error: {0}")]
    Format(String),
    /// An internal consistency check failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CodecError>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::CodecError::Usage(format!($($arg)*)) };
}

macro_rules! corrupt {
    ($($arg:tt)*) => { $crate::error::CodecError::CorruptStream(format!($($arg)*)) };
}

pub(crate) use corrupt;
pub(crate) use usage;
