//! The anisotropic Sobolev estimate `int u^3 <= 2 ||u||^{3/2} ||u_x|| ||d_x^{-1} u_y||^{1/2}`
//! and its variant with `||d_x^{-1} u_y|| + ||u||` in the last factor.

use serde::Serialize;

use crate::error::Result;
use crate::spectral::{check_constraint, dxinv_dy, spectral_l2_sq, x_derivative, Fft2, RealField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SobolevCheck {
    /// `int u^3`.
    pub lhs: f64,
    /// `2 ||u||^{3/2} ||u_x|| ||d_x^{-1} u_y||^{1/2}`.
    pub rhs_literal: f64,
    /// `2 ||u||^{3/2} ||u_x|| (||d_x^{-1} u_y|| + ||u||)^{1/2}`.
    pub rhs_corrected: f64,
    /// `lhs / rhs_corrected`, 0 when both vanish.
    pub ratio: f64,
}

impl SobolevCheck {
    /// Whether the estimate without the `||u||` term holds.
    pub fn literal_holds(&self) -> bool {
        self.lhs <= self.rhs_literal
    }
}

pub fn anisotropic_sobolev_check(u: &RealField) -> Result<SobolevCheck> {
    let mut fft = Fft2::new(*u.grid());
    let mut f = fft.forward(u);
    check_constraint(&f)?;
    f.enforce_constraint();
    let l2 = spectral_l2_sq(&f).sqrt();
    let dx = spectral_l2_sq(&x_derivative(&f)).sqrt();
    let transverse = spectral_l2_sq(&dxinv_dy(&f)).sqrt();
    let cell = u.grid().dx() * u.grid().dy();
    let lhs = u.values().iter().map(|v| v * v * v).sum::<f64>() * cell;
    let head = 2.0 * l2.powf(1.5) * dx;
    let rhs_literal = head * transverse.sqrt();
    let rhs_corrected = head * (transverse + l2).sqrt();
    let ratio = if rhs_corrected == 0.0 { 0.0 } else { lhs / rhs_corrected };
    Ok(SobolevCheck { lhs, rhs_literal, rhs_corrected, ratio })
}
