use thiserror::Error;

/// Errors reported by graph construction, tree algorithms and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid weight on edge ({u}, {v}): weights must be finite and non-negative")]
    InvalidWeight { u: usize, v: usize },

    #[error("total edge weight is too large for exact 64-bit arithmetic")]
    WeightOverflow,

    #[error("graph not connected from root {root}: vertex {vertex} is unreachable")]
    NotConnected { root: usize, vertex: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires exact integer weights")]
    InexactWeights,

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
