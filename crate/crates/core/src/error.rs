use thiserror::Error;

pub type Result<T> = std::result::Result<T, KpError>;

#[derive(Debug, Error)]
pub enum KpError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("shape mismatch: expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("hermitian symmetry violated (relative defect {defect:.3e})")]
    SymmetryViolation { defect: f64 },

    #[error("zero-x-mean constraint violated: {what} (relative magnitude {magnitude:.3e})")]
    ConstraintViolation { what: &'static str, magnitude: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("blow-up detected at t = {t} (linf = {linf:e})")]
    BlowupDetected { t: f64, linf: f64 },

    #[error("rescaling factor {0} is not an integer power of 4 compatible with the grid")]
    GridIncompatible(f64),

    #[error("soliton does not decay inside the box (edge/peak ratio {ratio:.3e})")]
    DomainTooSmall { ratio: f64 },

    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    #[error("frequencies off the hyperplane (defect {defect:.3e})")]
    HyperplaneViolation { defect: f64 },

    #[error("derivative of the level-set function vanishes on the interval")]
    DegenerateDerivative,

    #[error("malformed snapshot: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl KpError {
    /// Process exit code used by the batch runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            KpError::BlowupDetected { .. } | KpError::ConvergenceFailure(_) => 2,
            KpError::Io(_) | KpError::Format(_) => 3,
            _ => 1,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            KpError::InvalidGrid(_) => "invalid_grid",
            KpError::ShapeMismatch { .. } => "shape_mismatch",
            KpError::NonFinite { .. } => "non_finite",
            KpError::SymmetryViolation { .. } => "symmetry_violation",
            KpError::ConstraintViolation { .. } => "constraint_violation",
            KpError::DomainError(_) => "domain_error",
            KpError::InvalidConfig(_) => "invalid_config",
            KpError::BlowupDetected { .. } => "blowup_detected",
            KpError::GridIncompatible(_) => "grid_incompatible",
            KpError::DomainTooSmall { .. } => "domain_too_small",
            KpError::ConvergenceFailure(_) => "convergence_failure",
            KpError::HyperplaneViolation { .. } => "hyperplane_violation",
            KpError::DegenerateDerivative => "degenerate_derivative",
            KpError::Format(_) => "format",
            KpError::Io(_) => "io",
        }
    }
}
