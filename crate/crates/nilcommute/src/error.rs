use thiserror::Error;

/// Failures that stop a run, split by exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad flags, config or report input (exit 2).
    #[error("usage: {0}")]
    Usage(String),
    /// A broken invariant inside the harness or library (exit 3).
    #[error("internal: {0}")]
    Internal(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 2,
            HarnessError::Internal(_) => 3,
        }
    }
}

impl From<nilcommute_core::Error> for HarnessError {
    fn from(e: nilcommute_core::Error) -> Self {
        HarnessError::Internal(e.to_string())
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Usage(e.to_string())
    }
}

pub type HarnessResult<T> = Result<T, HarnessError>;
