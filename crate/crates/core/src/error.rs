use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    ZeroDivisor,
    #[error("input quaternion must be nonzero")]
    ZeroInput,
    #[error("result is not representable in the exact backend: {0}")]
    NotRepresentable(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rho must be a nonzero purely imaginary quaternion")]
    NonImaginaryRho,
    #[error("degenerate v: {0}")]
    DegenerateV(String),
    #[error("v must be nonzero")]
    ZeroV,
    #[error("point is not fiber-normalized: {0}")]
    NotNormalized(String),
    #[error("random draw degenerate after {0} attempts")]
    DegenerateDraw(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
