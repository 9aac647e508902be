use thiserror::Error;

use crate::graph::graph6::Graph6Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),

    #[error("order {order} exceeds the limit {limit} for {operation}")]
    OrderTooLarge {
        operation: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),

    #[error("zero polynomial cannot be classified")]
    ZeroPolynomial,

    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not a forest")]
    NotAForest,

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph order must be at least {0}")]
    OrderTooSmall(usize),

    #[error("seed graph is not palindromic, bipartite and connected: {0}")]
    SeedNotPalindromic(String),

    #[error("tree is not (anti)palindromic: {0}")]
    TreeNotPalindromic(String),

    #[error("emitted graph failed verification: {0}")]
    EmissionFailedVerification(String),

    #[error("missing survey report for order {order} ({population})")]
    MissingReport { order: usize, population: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
