use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("vertex x{vertex} is out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("tree has {0} vertices, at least 2 are required")]
    TooSmall(usize),
    #[error("element has a term of length 1, it is not in the derived subalgebra")]
    NotInDerivedSubalgebra,
    #[error("invalid map specification: {0}")]
    InvalidMapSpec(String),
    #[error("x{0} and x{1} are adjacent or equal, [x{0},x{1}] = 0 has no annihilator")]
    AdjacentPair(Vertex, Vertex),
    #[error("linear combination has a zero coefficient")]
    ZeroCoefficient,
    #[error("tree has no vertex of degree at least 2")]
    NoNonEndpoint,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial is not homogeneous of the component's multidegree")]
    DegreeMismatch,
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn semantic(line: usize, message: impl Into<String>) -> Self {
        Error::Semantic {
            line,
            message: message.into(),
        }
    }
}
