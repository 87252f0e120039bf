use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a tournament needs at least one vertex")]
    NoVertices,
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("size mismatch: expected {expected} arc bits, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set must be non-empty")]
    EmptySet,
    #[error("{n} vertices exceeds the {what} bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },
    #[error("expected {expected} parts, got {got}")]
    PartCountMismatch { expected: usize, got: usize },
    #[error("block {block} is not an interval")]
    NotAnInterval { block: String },
    #[error("{0} is not indecomposable")]
    NotIndecomposable(String),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("invalid hypomorphy entry {entry} for {n} vertices")]
    InvalidEntry { entry: i32, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("statement violated: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
