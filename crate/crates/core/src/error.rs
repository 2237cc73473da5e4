use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonInvertible: {0} is not a unit")]
    NonInvertible(String),

    #[error("cannot evaluate {0} at zero: negative exponents present")]
    EvaluationAtZero(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("enumeration cap exceeded: more than {limit} elements requested")]
    CapExceeded { limit: usize },

    #[error("RequiresTrivialChiPi: the matrix coefficient formula needs chi(phi_Pi) = 1, got {0}")]
    RequiresTrivialChiPi(String),

    #[error("RequiresOddE: the distinction integral needs odd e, got {0}")]
    RequiresOddE(usize),

    #[error("pole: denominator vanishes at {0}")]
    Pole(String),

    #[error("{0} lies outside the open interval (-1, 1)")]
    OutsideConvergence(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
