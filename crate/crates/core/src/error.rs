use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("truncation mismatch: n_max {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("shape mismatch: expected {expected} modes, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid mode selection: {0}")]
    InvalidModes(String),

    #[error("truncation tail {tail:.3e} exceeds tolerance {tolerance:.3e}; increase n_max")]
    TailExceeded { tail: f64, tolerance: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
