use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("EmptyCorpus: {0} contains no entries")]
    EmptyCorpus(String),

    #[error("{origin}:{line}: {message}")]
    Malformed {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("unsupported model format_version {0} (expected 1)")]
    UnsupportedFormat(u64),

    #[error("ResourceMissing: {0}")]
    ResourceMissing(&'static str),

    #[error("PositionOutOfRange: position {position} but title has {len} tokens")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("IdentityReplacement: replacement equals original word {0:?}")]
    IdentityReplacement(String),

    #[error("AlreadyReviewed: candidate {0} already has a decision")]
    AlreadyReviewed(String),

    #[error("UnknownCandidate: {0}")]
    UnknownCandidate(String),

    #[error("UnknownSession: {0}")]
    UnknownSession(String),

    #[error("TooFewObservations: need at least {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("OutOfScale: item {index} has value {value}, expected 1..=5")]
    OutOfScale { index: usize, value: i64 },

    #[error("MissingVariant: no responses for variant {0}")]
    MissingVariant(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: &Path, source: io::Error) -> Error {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn malformed(origin: impl Into<String>, line: usize, message: impl Into<String>) -> Error {
        Error::Malformed {
            origin: origin.into(),
            line,
            message: message.into(),
        }
    }
}
