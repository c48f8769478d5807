use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eta must be nonnegative")]
    NegativeEta,

    #[error("t must be positive")]
    NonPositiveT,

    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("series coefficient {index}: {reason}")]
    SeriesPrecondition { index: usize, reason: &'static str },

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("insufficient Jacobi coefficients: index {needed} requested, {available} available")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("off-diagonal coefficient a_{index} is not positive")]
    NonPositiveOffDiagonal { index: usize },

    #[error("symmetric eigen-decomposition did not produce a usable rule")]
    EigenFailure,

    #[error("partition size {n} outside 1..={max}")]
    PartitionRange { n: usize, max: usize },

    #[error("insufficient moments: need index {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("degree {degree} exceeds basis order {order}")]
    DegreeOverflow { degree: usize, order: usize },

    #[error("imaginary residual {residual:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidual { residual: f64, tolerance: f64 },

    #[error("{what} requires the {expected} framework")]
    WrongFramework { what: &'static str, expected: &'static str },

    #[error("internal mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
