use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("pair {{{u},{v}}} labeled with conflicting colors")]
    ConflictingColor { u: VertexId, v: VertexId },

    #[error("pair {{{u},{v}}} is neutral in a complete graph")]
    NeutralInComplete { u: VertexId, v: VertexId },

    #[error("{n} vertices exceeds the limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },

    #[error("operation requires a complete correlation graph")]
    IncompleteGraph,

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("vertex {0} is contained in no cluster")]
    Uncovered(VertexId),

    #[error("clustering is not valid for the graph: {0}")]
    InvalidClustering(String),

    #[error("realized graph contains an erroneous cycle")]
    ErroneousCycle,

    #[error("malformed realized graph: {0}")]
    MalformedRealization(String),

    #[error("search exceeded node limit of {0}")]
    NodeLimitExceeded(u64),

    #[error("no cluster of the kernel solution contains the marked core {0:?}")]
    MarkedCoreNotFound(Vec<VertexId>),

    #[error("kernel solution does not fit the transcript: {0}")]
    TranscriptMismatch(String),

    #[error("terminal pair {{{u},{v}}} is also an edge")]
    TerminalEdgeOverlap { u: VertexId, v: VertexId },

    #[error("malformed partition for vertex {vertex}: {msg}")]
    MalformedPartition { vertex: VertexId, msg: String },

    #[error("multicut solution leaves terminal pair {{{u},{v}}} connected")]
    UnverifiedMulticut { u: VertexId, v: VertexId },

    #[error("invalid probabilities: {0}")]
    InvalidProbability(String),

    #[error("bipartite edge endpoint {0} is not declared on its side")]
    UndeclaredEndpoint(VertexId),

    #[error("coloring gadget needs at least 3 colors, got {0}")]
    TooFewColors(usize),
}
