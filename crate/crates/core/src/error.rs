use thiserror::Error;

/// Errors produced by graph construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("no edge {{{0}, {1}}}")]
    MissingEdge(usize, usize),

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("arcs ({0}, {1}) and ({1}, {0}) form a digon")]
    Digon(usize, usize),

    #[error("n = {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("graph is not complete")]
    NotComplete,

    /// A documented precondition of an operation does not hold, e.g. `n < 3k`.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration budget exceeded: {estimate} colorings (budget {budget})")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("orientation precondition violated: {0}")]
    Orientation(String),

    /// A generator produced an object that fails its own consistency check.
    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
