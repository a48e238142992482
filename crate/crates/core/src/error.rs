use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pin (net {net}, vertex {vertex}) is out of range")]
    InvalidPin { net: usize, vertex: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("vertex {vertex} has no part assigned")]
    IncompletePartition { vertex: usize },

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("predicted net intersection graph size {predicted} exceeds cap {cap}")]
    CliqueBlowup { predicted: u64, cap: u64 },

    #[error("graph and hypergraph do not describe the same model: {0}")]
    ModelMismatch(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("separator is invalid: edge ({u}, {v}) joins side A to side B")]
    InvalidSeparator { u: usize, v: usize },

    #[error("vertex {vertex} has nets placed in more than one part")]
    Consistency { vertex: usize },

    #[error("instance size {size} exceeds the oracle limit {max}")]
    TooLarge { size: usize, max: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}
