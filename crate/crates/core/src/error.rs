use thiserror::Error;

use crate::graph::Node;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("no connected graph found after {attempts} attempts (n={n}, p={edge_prob})")]
    Generation {
        n: usize,
        edge_prob: f64,
        attempts: u32,
    },

    #[error("{what} on {nodes} nodes exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        nodes: usize,
        limit: usize,
    },

    /// No path separator with fewer than `k` nodes splits the graph in two.
    #[error("G has connectivity above {k} (subgraph of {nodes} nodes, smallest label {smallest:?})")]
    ConnectivityExceeded {
        k: usize,
        nodes: usize,
        smallest: Option<Node>,
    },

    #[error("partition made no progress on a {nodes}-node graph")]
    NoProgress { nodes: usize },

    #[error("reconstruction produced no compatible pairs at depth {depth} ({nodes} nodes)")]
    ReconstructionFailed { depth: usize, nodes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
