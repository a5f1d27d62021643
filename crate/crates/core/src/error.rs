use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cell index {index} out of range for {what} {position} (capacity {capacity})")]
    CellOutOfRange {
        what: &'static str,
        position: usize,
        index: usize,
        capacity: usize,
    },

    #[error("undefined efficacy: n1 = 0 and v = 0")]
    UndefinedEfficacy,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("weighted instance rejected: {0}")]
    Weighted(&'static str),

    #[error("trivial instance, answer directly: {0}")]
    Trivial(&'static str),

    #[error("threshold out of range: {0}")]
    ThresholdOutOfRange(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("inconsistent edit set: {0}")]
    InconsistentEdits(String),

    #[error("not a bicluster graph: missing edge ({0}, {1})")]
    NotBicluster(usize, usize),

    #[error("invalid edge: {0}")]
    InvalidGraph(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = CfpError> = std::result::Result<T, E>;

impl CfpError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CfpError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
