use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid rook: {0}")]
    InvalidRook(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("arc ({0},{1}) not present in the diagram")]
    ArcNotPresent(usize, usize),

    #[error("not a maximal chain of the diagram: {0:?}")]
    NotAChain(Vec<usize>),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("rook {0} is not strictly upper triangular")]
    NotStrictlyUpper(String),

    #[error("{0} is not in universe {1}")]
    NotInUniverse(String, String),

    #[error("{what}: {param} must be at most {limit}, got {got}")]
    BoundExceeded {
        what: &'static str,
        param: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("element not found in poset: {0}")]
    ElementNotFound(String),

    #[error("elements {0} and {1} are incomparable")]
    Incomparable(String, String),

    #[error("cover digraph has a cycle through {0}")]
    CycleDetected(String),

    #[error("edge labeling is not total: cover ({0},{1}) has no label")]
    PartialLabeling(usize, usize),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("substituting q -> 1/q and shifting by q^{shift} leaves a negative exponent for the q^{exponent} term")]
    NegativeExponent { shift: u64, exponent: u64 },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A parse failure with enough position information to print a caret
/// diagnostic under the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// The full input that failed to parse.
    pub input: String,
    /// Character offset of the failure (for caret rendering).
    pub position: usize,
    /// What went wrong.
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    /// Two-line rendering: the input, then a caret under the failure point
    /// followed by the message.
    pub fn caret_diagnostic(&self) -> String {
        let mut out = String::from("  ");
        out.push_str(&self.input);
        out.push_str("\n  ");
        for _ in 0..self.position {
            out.push(' ');
        }
        out.push_str("^ ");
        out.push_str(&self.message);
        out
    }
}
