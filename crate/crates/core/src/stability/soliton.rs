use crate::error::{KpError, Result};
use crate::spectral::{Grid, RealField};

/// Largest admissible ratio `Q_c(edge) / Q_c(0)` for a soliton in a finite box.
pub const DECAY_TOL: f64 = 1e-12;

/// Line soliton parameters: speed `c > 0` and center `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    pub c: f64,
    pub x0: f64,
}

impl SolitonParams {
    pub fn new(c: f64, x0: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(KpError::DomainError(format!("soliton speed c = {c} must be positive")));
        }
        if !x0.is_finite() {
            return Err(KpError::DomainError("soliton center must be finite".into()));
        }
        Ok(Self { c, x0 })
    }

    pub fn value(&self, x: f64) -> f64 {
        soliton_value(self.c, x - self.x0)
    }
}

/// `Q_c(x) = 3c / cosh(sqrt(c) x / 2)^2`.
pub fn soliton_value(c: f64, x: f64) -> f64 {
    let s = 1.0 / (0.5 * c.sqrt() * x).cosh();
    3.0 * c * s * s
}

/// `Q_c'(x)`.
pub fn soliton_derivative(c: f64, x: f64) -> f64 {
    let a = 0.5 * c.sqrt();
    -2.0 * a * soliton_value(c, x) * (a * x).tanh()
}

/// Samples `Q_c(x - x0)` on the grid (constant in y).
pub fn soliton_profile(p: &SolitonParams, g: &Grid) -> Result<RealField> {
    let half = 0.5 * g.length_x();
    let edge = soliton_value(p.c, -half - p.x0).max(soliton_value(p.c, half - p.x0));
    let ratio = edge / (3.0 * p.c);
    if ratio >= DECAY_TOL {
        return Err(KpError::DomainTooSmall { ratio });
    }
    RealField::from_fn(*g, |x, _| p.value(x))
}
