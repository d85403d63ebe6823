use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    NotConnected,
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("edge {0} is not a cotree edge of the chosen spanning tree")]
    NotCotreeEdge(EdgeId),
    #[error("edge {0} is not of type 3 (its tree path has fewer than two edges)")]
    NotType3(EdgeId),
    #[error("no cotree edge supports both tree edges {0} and {1}")]
    SignUndetermined(EdgeId, EdgeId),
    #[error("chains live on different graphs")]
    HostMismatch,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("improper partition: {0}")]
    ImproperPartition(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("cells {0:?} do not form a spanning forest")]
    NotSpanningForest(Vec<usize>),
    #[error("{count} top cells exceeds the enumeration limit of {limit}")]
    TooManyCells { count: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
