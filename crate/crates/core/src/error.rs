use crate::clustering::Obstruction;
use crate::graph::Vertex;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("the block class contains no graph with an edge")]
    DegenerateClass,
    #[error("graph is not clusterable: found obstruction {0:?}")]
    NotFree(Box<Obstruction>),
    #[error("instance has {n} vertices, above the brute-force cap of {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("expansion precondition violated: {0}")]
    Expansion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
