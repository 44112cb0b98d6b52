use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: VertexId, v: VertexId, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("vertex {vertex} is not in the graph (n = {n})")]
    InvalidVertex { vertex: VertexId, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertices {0} and {1} are not connected")]
    Unreachable(VertexId, VertexId),

    #[error("geodesic endpoints must differ (got {0} twice)")]
    SameEndpoints(VertexId),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{kind} level {level} exceeds the supported maximum {max}")]
    LevelTooLarge {
        kind: &'static str,
        level: usize,
        max: usize,
    },

    #[error("vertex {vertex} is not dominated")]
    NotDominating { vertex: VertexId },

    #[error("witness is not normalized: middle-layer vertex {0} is in the set")]
    NotNormalized(VertexId),

    #[error("search limits were exhausted before the answer was determined")]
    Indeterminate,

    #[error("invalid witness: {0}")]
    Witness(#[from] crate::witness::Violation),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
