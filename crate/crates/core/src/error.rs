use thiserror::Error;

use crate::poly::Block;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected a 1-vector, found an element with grade other than 1")]
    NotVector,

    #[error("polynomial is not homogeneous in block {0:?}")]
    NotHomogeneous(Block),

    #[error("polynomial must depend on block {expected:?} only, found {found:?}")]
    MixedBlocks { expected: Block, found: Block },

    #[error("no assignment given for block {0:?}")]
    MissingAssignment(Block),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("input is not monogenic")]
    NotMonogenic,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
