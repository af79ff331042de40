use std::path::PathBuf;

use crate::dynamics::Unit;

/// Errors reported by parameter validation and file output.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rotation axis must be nonzero")]
    ZeroAxis,

    #[error("profile direction must be nonzero")]
    ZeroDirection,

    #[error("power m must be >= 2, got {0}")]
    PowerTooSmall(u32),

    #[error("slice units must be pairwise distinct, got ({0}, {1}, {2})")]
    DuplicateUnits(Unit, Unit, Unit),

    #[error("{what} must be at least {min}, got {got}")]
    TooFew {
        what: &'static str,
        min: u64,
        got: u64,
    },

    #[error("{what} must be positive, got {got}")]
    NonPositive { what: &'static str, got: f64 },

    #[error("max_iter must fit 16-bit voxel output (<= 65535), got {0}")]
    MaxIterTooLarge(u32),

    #[error("unknown check id `{id}`; valid ids: {valid}")]
    UnknownCheck { id: String, valid: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed sidecar: {detail}")]
    BadSidecar { path: PathBuf, detail: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
        let path = path.into();
        move |source| Error::Io { path, source }
    }
}
