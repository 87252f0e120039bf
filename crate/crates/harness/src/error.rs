use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] tk_core::Error),
    #[error("unknown suite {0:?} (see `tk verify --list`)")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub(crate) fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidParam(msg.into())
}
