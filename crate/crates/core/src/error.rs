use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {n} exceeds the enumeration capacity limit of {limit} (2^n solutions); pass an explicit override to go further")]
    Capacity { n: usize, limit: usize },

    #[error("edge {src} -> {dst} has weight {weight}, outside [0, 1]")]
    InvalidWeight { src: usize, dst: usize, weight: f64 },

    #[error("provenance mismatch: {0}")]
    Provenance(String),

    #[error("failed to parse {path}: {msg}")]
    Parse { path: PathBuf, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, msg: impl ToString) -> Self {
        Error::Parse { path: path.into(), msg: msg.to_string() }
    }
}
