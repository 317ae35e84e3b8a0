use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("construction inconsistent: max residual {residual:e} exceeds {tol:e}")]
    ConstructionInconsistent { residual: f64, tol: f64 },
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),
    #[error("mask is not centro-symmetric (residual {0:e})")]
    NotSymmetric(f64),
    #[error("wrong size: expected {expected}, got {got}")]
    WrongSize { expected: String, got: String },
    #[error("mask support {rows}x{cols} exceeds {max}x{max}")]
    SupportTooLarge { rows: usize, cols: usize, max: usize },
    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("levels {0} outside [1, 12]")]
    LevelsOutOfRange(usize),
    #[error("image dimensions {width}x{height} must be even and at least 2")]
    OddDimensions { width: usize, height: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("lemma relation violated: {0}")]
    LemmaViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
