use crate::graph::VertexPair;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edit {op} {pair} does not match the graph")]
    EditMismatch { pair: VertexPair, op: &'static str },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate pair {0}")]
    DuplicatePair(VertexPair),

    #[error("family {family} cannot be checked on a {host}")]
    FamilyMismatch { family: &'static str, host: &'static str },

    #[error("problem {problem} requires a {expected} host")]
    ProblemMismatch { problem: &'static str, expected: &'static str },

    #[error("malformed formula: {0}")]
    MalformedFormula(String),

    #[error("q = {q} is below the minimum {min}")]
    QTooSmall { q: usize, min: usize },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
