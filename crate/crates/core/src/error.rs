use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("arity must be positive")]
    ZeroArity,

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("colon by the zero ideal is undefined")]
    ZeroDivisorIdeal,

    #[error("ideal must be proper and nonzero, got the {0} ideal")]
    TrivialIdeal(&'static str),

    #[error("prime support must be nonempty")]
    EmptySupport,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("{what} needs {needed} steps, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("refused: {0}")]
    Refused(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
