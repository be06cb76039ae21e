use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {u}-{v} closes a cycle")]
    Cycle { u: usize, v: usize },

    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid roots: {0}")]
    InvalidRoot(String),

    #[error("matching is not maximum: an augmenting path exists")]
    NotMaximum,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("instance has {n} vertices, oracle limit is {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("vertex {0} is not in the null-space support")]
    NotInSupport(usize),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}
