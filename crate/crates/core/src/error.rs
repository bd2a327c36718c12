use thiserror::Error;

/// Errors raised by graph construction, interchange and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpexError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop requested at vertex {0}")]
    SelfLoop(usize),
    #[error("operation requires a non-empty graph")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("power iteration did not reach residual {tol:e} within {max_iter} iterations (last residual {residual:e})")]
    NoConvergence {
        tol: f64,
        max_iter: usize,
        residual: f64,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exact oracle limited to n <= {limit}, got {n}")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),
    #[error("graph is not of the form K2 + (union of paths)")]
    NoJoinDecomposition,
    #[error("stream line {line}: {message}")]
    Stream { line: usize, message: String },
    #[error("arithmetic overflow in exact characteristic polynomial")]
    Overflow,
}

pub type Result<T, E = SpexError> = std::result::Result<T, E>;
