use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular Verblunsky pair (rho = 0) at index {index:?}")]
    SingularPair { index: Option<i64> },
    #[error("singular cocycle step {step}: {reason}")]
    SingularCocycle { step: i64, reason: String },
    #[error("walk and CMV operators do not match under any interleaving (best deviation {deviation:e})")]
    StructuralMismatch { deviation: f64 },
    #[error("strip half-width {eps} reaches the singular line at y = {critical_y}")]
    StripTooWide { eps: f64, critical_y: f64 },
    #[error("input wave fails its own eigen-residual precondition: {residual:e}")]
    Precondition { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
