use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex v{vertex} is out of range 1..={order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex set is empty")]
    EmptySet,

    #[error("matrix is not symmetric (entry ({row}, {col}))")]
    NotSymmetric { row: usize, col: usize },

    #[error("{what} too large: {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("MPCVS family is incomplete; support test needs an exhaustive family")]
    IncompleteFamily,

    #[error("angle {theta} is not an eigenangle of the block")]
    NotEigenangle { theta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
