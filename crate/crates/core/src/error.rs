use std::path::PathBuf;

use crate::graph::{EdgeId, Time, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("time {t} out of range 1..={m}")]
    TimeOutOfRange { t: Time, m: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("edge {0} is not in the prediction")]
    EdgeNotInPrediction(EdgeId),

    #[error("edge {edge} arrived out of sequence: {reason}")]
    Sequence { edge: EdgeId, reason: &'static str },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
