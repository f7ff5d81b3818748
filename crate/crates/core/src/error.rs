use std::io;

use thiserror::Error;

/// Errors produced by the engine and the experiment harness.
#[derive(Debug, Error)]
pub enum GgmError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected ({components} components); connected input is required")]
    Disconnected { components: usize },

    #[error("exact expansion needs n <= {max} (got n = {n}); use spectral_expansion for larger graphs")]
    TooLarge { n: usize, max: usize },

    #[error("expansion is undefined for n = {0}: no subset satisfies 0 < |S| < n/2")]
    UndefinedRange(usize),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, GgmError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(GgmError::InvalidArgument(msg.into()))
}
