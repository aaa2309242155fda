use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RubbleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("move is not executable: {0}")]
    MoveNotExecutable(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid smoothing: {0}")]
    InvalidSmoothing(String),
    #[error("graph too small: {0}")]
    GraphTooSmall(String),
    #[error("no reduction candidates: {0}")]
    NoCandidates(String),
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
    #[error("distribution too large for exhaustive search: {0}")]
    TooManyPebbles(String),
    #[error("time budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = RubbleError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> RubbleError {
    RubbleError::InvalidParameter(msg.into())
}
