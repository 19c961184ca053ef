use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("embedding is not planar: {vertices} - {edges} + {faces} != 2")]
    NonPlanarEmbedding {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge lengths overflow the 64-bit distance budget")]
    Overflow,
    #[error("r-division parameter {0} is smaller than 4")]
    ParameterTooSmall(usize),
    #[error("hole index {index} out of range (region has {holes} holes)")]
    InvalidHole { index: usize, holes: usize },
    #[error("price function infeasible on edge {tail}->{head} (reduced cost {reduced})")]
    InfeasiblePrice { tail: usize, head: usize, reduced: i64 },
    #[error("negative cycle detected")]
    NegativeCycleDetected,
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
