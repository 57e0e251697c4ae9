use alloc::string::String;
use core::fmt;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller violated an operation precondition (bad dimensions,
    /// out-of-range parameter, empty input).
    InvalidArgument(String),
    /// Two inputs that must be sample-aligned have different sample counts.
    SampleMismatch { left: usize, right: usize },
    /// A value that must be finite is NaN or infinite. Indices are
    /// (row, col) of the first offending entry in row-major order.
    NonFinite { row: usize, col: usize },
    /// An iterative numeric routine failed to converge or produced an
    /// unusable decomposition.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::SampleMismatch { left, right } => {
                write!(f, "sample counts differ: {left} vs {right}")
            }
            Error::NonFinite { row, col } => {
                write!(f, "non-finite value at row {row}, col {col}")
            }
            Error::Numeric(msg) => write!(f, "numeric failure: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
