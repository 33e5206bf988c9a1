use thiserror::Error;

/// Errors produced by the model, the solvers and the document parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid completion: {0}")]
    InvalidCompletion(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid budget {budget}: not a sum of admissible machine counts")]
    InvalidBudget { budget: u64 },
    #[error("invalid voting vector: {0}")]
    InvalidVector(String),
    #[error("unsupported rule: {0}")]
    UnsupportedRule(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("search space of {size} exceeds the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
