use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("numerically singular")]
    NumericallySingular,
    #[error("scaling exceeds precision (k' = {kprime} >= k = {k})")]
    ScalingExceedsPrecision { k: u32, kprime: u32 },
    #[error("no candidate: {0}")]
    NoCandidate(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("not a subgroup chain: {0}")]
    NotSubgroupChain(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("inconclusive, change prime: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
