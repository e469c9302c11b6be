use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("arity {n} exceeds the limit of {max}")]
    ArityTooLarge { n: usize, max: usize },

    #[error("assignment index {idx} out of range for {n} variables")]
    AssignmentOutOfRange { n: usize, idx: usize },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid function family: {0}")]
    InvalidFamily(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("function does not have uniform alternation over maximal chains")]
    NotUniform,

    #[error("implication violated between components {0} and {1}")]
    ImplicationViolated(usize, usize),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("malformed decision list: {0}")]
    MalformedList(String),

    #[error("gate {0} is not a NOT gate")]
    NotANot(usize),

    #[error("expected a single-output circuit, got {0} outputs")]
    MultiOutput(usize),

    #[error("query set size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("model format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
