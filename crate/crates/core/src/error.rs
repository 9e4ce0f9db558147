use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: malformed `{content}`")]
    BadLine { line: usize, content: String },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("graph6: byte {byte:#04x} at offset {offset} outside 63..=126")]
    Graph6Byte { byte: u8, offset: usize },
    #[error("graph6: expected {expected} data bytes for n = {n}, found {found}")]
    Graph6Length {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6: {n} vertices exceeds the supported maximum")]
    Graph6TooLarge { n: usize },
}

/// Failures of spanning-tree construction and exchange application. Any
/// of these coming out of the solver indicates a bug in move generation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge {0}-{1} is not an edge of the host graph")]
    NotInHost(Vertex, Vertex),
    #[error("edge list does not form a tree: {0}")]
    NotATree(String),
    #[error("invalid exchange: {0}")]
    ExchangeInvalid(String),
    #[error("decomposition needs exactly 5 leaves, tree has {0}")]
    NotFiveLeaves(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("internal invariant breach: {0}")]
    InternalInvariantBreach(String),
    #[error("iteration guard exceeded after {moves} accepted moves (limit {limit})")]
    IterationGuardExceeded { moves: u64, limit: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("tree budget of {budget} exhausted; best found has {best_upper_bound:?} leaves")]
    BudgetExceeded {
        budget: u64,
        best_upper_bound: Option<usize>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerationError {
    #[error("no verified instance after {attempts} resamples (n = {n})")]
    GenerationFailed { n: usize, attempts: usize },
    #[error("n = {n} is below the minimum of {min}")]
    TooSmall { n: usize, min: usize },
}
