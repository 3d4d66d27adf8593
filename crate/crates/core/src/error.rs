use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by dataset construction, metrics, splitters and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid split spec: {0}")]
    InvalidSpec(String),

    #[error("more folds than supportable samples: {folds} folds for {samples} samples")]
    TooManyFolds { folds: usize, samples: usize },

    #[error("invalid GA config: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("LWD undefined for empty fold (fold {fold})")]
    EmptyFold { fold: usize },

    #[error("PLD undefined for single-class dataset")]
    PldUndefined,

    #[error("oracle enumeration count {count} exceeds limit {limit}")]
    EnumerationLimit { count: String, limit: u128 },

    #[error("no mask files found in {0}")]
    NoMasks(PathBuf),

    #[error("{file}: pixel value {value} is outside the declared classes and not ignored")]
    UnknownPixelValue { file: PathBuf, value: u32 },

    #[error("{file}: every pixel carries an ignore label")]
    AllPixelsIgnored { file: PathBuf },

    #[error("{file}: {reason}")]
    Mask { file: PathBuf, reason: String },

    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("duplicate sample id '{0}'")]
    DuplicateId(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
