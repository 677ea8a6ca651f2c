use thiserror::Error;

/// Errors produced by the graph, cycle, separation and measurement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("graph has {0} edges; at most 128 are supported by edge masks")]
    TooManyEdges(usize),
    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCapExceeded(usize),
    #[error("invalid 2-separation: {0}")]
    InvalidSeparation(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid edge bijection: {0}")]
    InvalidBijection(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
