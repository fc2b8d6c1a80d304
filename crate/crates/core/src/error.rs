use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("mesh generation failed: {0}")]
    MeshGeneration(String),
    #[error("degenerate element {element}: {reason}")]
    ElementQuality { element: usize, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("assembly failed: {0}")]
    Assembly(String),
    #[error("preconditioner failed: {0}")]
    Preconditioner(String),
    #[error("time marching diverged: {0}")]
    Divergence(String),
    #[error("reference field has zero norm")]
    ZeroNorm,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
