use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid inclusion: {0}")]
    InvalidInclusion(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("spin lift failed: {0}")]
    SpinLift(String),
    #[error("lift ambiguity on grid edge {from} -> {to}: {reason}")]
    LiftAmbiguity { from: usize, to: usize, reason: String },
    #[error("degenerate immersion at sample {index}: {reason}")]
    DegenerateImmersion { index: usize, reason: String },
    #[error("normal frame construction failed at sample {index}")]
    Frame { index: usize },
    #[error("frame requirement: {0}")]
    FrameRequirement(String),
    #[error("accuracy: {0}")]
    Accuracy(String),
    #[error("offset beyond focal bound: |q|*kappa = {product} (limit {limit})")]
    FocalRadius { product: f64, limit: f64 },
    #[error("non-conformal chart: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NonConformal { residual: f64, tolerance: f64 },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-conformal spinor data: compatibility residual {residual:e} exceeds {tolerance:e}")]
    NonConformalData { residual: f64, tolerance: f64 },
    #[error("degenerate spinor data: {0}")]
    Degenerate(String),
    #[error("inconsistent spinors: closedness residual {residual:e} exceeds bound {bound:e}")]
    InconsistentSpinor { residual: f64, bound: f64 },
    #[error("grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
