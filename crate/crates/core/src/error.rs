//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("invalid mask: {0}")]
    InvalidMask(String),

    #[error("no foreground")]
    NoForeground,

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("{file}:{line}: parse error: {msg}")]
    Parse {
        file: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite loss at iteration {iteration} (lr {lr})")]
    NonFiniteLoss { iteration: usize, lr: f64 },

    #[error("unknown image id in detections: {0}")]
    UnknownImageId(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
