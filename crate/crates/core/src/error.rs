use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A shape with a zero (or unrepresentable) side length, or the wrong dimension.
    InvalidShape(String),
    /// An argument outside the domain of the operation.
    Domain(String),
    /// An exhaustive computation was refused because it exceeds a size guard.
    ResourceGuard(String),
    /// A reflect-push move whose numbered hypothesis does not hold.
    Precondition { hypothesis: u8, reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape(msg) => write!(f, "invalid shape: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::ResourceGuard(msg) => write!(f, "resource guard exceeded: {msg}"),
            Error::Precondition { hypothesis, reason } => {
                write!(f, "hypothesis {hypothesis} violated: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
