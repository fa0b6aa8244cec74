use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{literal}` at position {pos} is not allowed in {mode} mode")]
    WrongMode {
        pos: usize,
        literal: String,
        mode: &'static str,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("monodromy multiplier a_{0} is zero")]
    ZeroMonodromy(usize),
    #[error("empty value set for coordinate {0}")]
    EmptyValueSet(usize),
    #[error("grid has {points} points, more than the cap of {cap}")]
    GridTooLarge { points: String, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
