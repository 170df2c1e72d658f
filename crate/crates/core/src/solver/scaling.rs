//! KP-I scaling symmetry `u -> lam^{-1} u(lam^{-3/2} t, lam^{-1/2} x, lam^{-1} y)`.

use crate::error::{KpError, Result};
use crate::spectral::{energy_norm, Grid, RealField};

/// Exponent `k` with `lam = 4^k`, if any.
fn power_of_four(lam: f64) -> Option<i32> {
    if !(lam.is_finite() && lam > 0.0) {
        return None;
    }
    let k = lam.log2() / 2.0;
    let kr = k.round();
    if (k - kr).abs() > 1e-12 || 4f64.powi(kr as i32) != lam {
        return None;
    }
    Some(kr as i32)
}

/// Grid on which `u_lam` is sampled: x stretched by `lam^{1/2}`, y by `lam`.
pub fn rescaled_grid(grid: &Grid, lam: f64) -> Result<Grid> {
    let k = power_of_four(lam).ok_or(KpError::GridIncompatible(lam))?;
    grid.with_lengths(grid.length_x() * 2f64.powi(k), grid.lambda_y() * lam)
        .map_err(|_| KpError::GridIncompatible(lam))
}

/// `u_lam(x, y) = lam^{-1} u(lam^{-1/2} x, lam^{-1} y)` on the rescaled grid.
///
/// Grid nodes map onto grid nodes, so the samples are exact.
pub fn rescale(u: &RealField, lam: f64) -> Result<RealField> {
    let grid = rescaled_grid(u.grid(), lam)?;
    Ok(RealField::new(grid, u.values().iter().map(|v| v / lam).collect()).expect("same shape"))
}

/// Time that corresponds to `t` after rescaling by `lam`: `lam^{3/2} t`.
pub fn rescaled_time(t: f64, lam: f64) -> f64 {
    t * lam * lam.sqrt()
}

/// `||u_lam||_E / (lam^{-1/4} ||u||_E)`; at most 1 for `lam >= 1`.
pub fn scaling_norm_ratio(u: &RealField, lam: f64) -> Result<f64> {
    let base = energy_norm(u)?;
    if base == 0.0 {
        return Ok(0.0);
    }
    let scaled = energy_norm(&rescale(u, lam)?)?;
    Ok(scaled / (lam.powf(-0.25) * base))
}
