use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no value supplied for variable {0}")]
    MissingVariable(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scan exhausted at stage {stage}: {trace}")]
    ScanExhausted { stage: usize, trace: String },
}

pub type Result<T> = core::result::Result<T, Error>;
