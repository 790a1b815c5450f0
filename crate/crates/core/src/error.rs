use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex index {index} out of range for graph of order {order}")]
    VertexOutOfRange { index: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("line graph budget exceeded: next graph needs {needed} {what}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: usize,
    },

    #[error("Wiener index overflowed 128 bits")]
    Overflow,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("input is not a tree")]
    NotATree,

    #[error("order {order} exceeds the exhaustive search limit {limit}")]
    OrderLimit { order: usize, limit: usize },

    #[error("non-integral value {0} where an integer was expected")]
    NotIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
