use thiserror::Error;

/// Errors shared across the workbench modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("wild prime {prime} is not supported (inertia order divisible by the residue characteristic)")]
    WildPrime { prime: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("calibration unstable: {0}")]
    Calibration(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn size_limit(msg: impl Into<String>) -> Self {
        Error::SizeLimit(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
