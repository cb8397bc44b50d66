use thiserror::Error;

/// Failures of the command line, each tied to an exit code.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type AppResult<T> = Result<T, AppError>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Guard(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        }
    }
}

impl From<downset_core::Error> for AppError {
    fn from(e: downset_core::Error) -> Self {
        match e {
            downset_core::Error::ResourceGuard(_) => AppError::Guard(e.to_string()),
            other => AppError::Usage(other.to_string()),
        }
    }
}
