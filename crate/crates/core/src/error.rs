use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("degenerate polynomial: {0}")]
    Degenerate(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("root estimation failed: {0}")]
    RootEstimation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
