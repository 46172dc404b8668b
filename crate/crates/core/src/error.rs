use thiserror::Error;

use crate::graph::VertexPair;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {0} is outside the supported range 1..=64")]
    Order(usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not a valid simple graph: {0}")]
    InvalidAdjacency(String),
    #[error("{0} is not an edge")]
    NotAnEdge(VertexPair),
    #[error("{0} is not a dominating edge")]
    NotDominating(VertexPair),
    #[error("P_uv is nonempty; use the P_uv matching checks instead")]
    PuvNonEmpty,
    #[error("invalid family parameters: {0}")]
    FamilyParams(String),
    #[error("internal inconsistency (counterexample or bug): {0}")]
    Inconsistency(String),
    #[error("shard merge rejected: {0}")]
    Merge(String),
    #[error(transparent)]
    Graph6(#[from] crate::graph6::Graph6Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
