//! Homogeneous Littlewood-Paley projectors in the x frequency.

use num_complex::Complex64;

use super::field::SpectralField;
use super::operators::on_nyquist;
use crate::error::{KpError, Result};

/// Plateau `chi = 1` on `[-5/4, 5/4]`.
pub const CHI_PLATEAU: f64 = 1.25;
/// Support bound `chi = 0` outside `[-8/5, 8/5]`.
pub const CHI_SUPPORT: f64 = 1.6;

fn smooth_step_piece(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth even cutoff: 1 on the plateau, 0 beyond the support bound, and a
/// `C^infinity` monotone transition built from `exp(-1/t)` in between.
pub fn bump_chi(x: f64) -> f64 {
    let a = x.abs();
    if a <= CHI_PLATEAU {
        return 1.0;
    }
    if a >= CHI_SUPPORT {
        return 0.0;
    }
    let t = (CHI_SUPPORT - a) / (CHI_SUPPORT - CHI_PLATEAU);
    let up = smooth_step_piece(t);
    up / (up + smooth_step_piece(1.0 - t))
}

/// `eta_M(xi) = chi(xi/M) - chi(2 xi/M)`.
pub fn eta(m: f64, xi: f64) -> f64 {
    bump_chi(xi / m) - bump_chi(2.0 * xi / m)
}

fn check_dyadic(m: f64) -> Result<()> {
    let e = m.log2();
    if !(m > 0.0 && m.is_finite()) || (e - e.round()).abs() > 1e-12 {
        return Err(KpError::DomainError(format!("M = {m} is not a power of two")));
    }
    Ok(())
}

fn apply_x_multiplier(f: &SpectralField, m: impl Fn(f64) -> f64) -> SpectralField {
    let g = *f.grid();
    f.map_modes(|i, j| {
        if on_nyquist(&g, i, j) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(m(g.xi(i)), 0.0)
        }
    })
}

/// `P_M`: multiplies by `eta_M(xi)`.
pub fn lp_projector(f: &SpectralField, m: f64) -> Result<SpectralField> {
    check_dyadic(m)?;
    Ok(apply_x_multiplier(f, |xi| eta(m, xi)))
}

/// `P_{<= M}`: multiplies by `chi(xi/M)`.
pub fn lp_projector_leq(f: &SpectralField, m: f64) -> Result<SpectralField> {
    check_dyadic(m)?;
    Ok(apply_x_multiplier(f, |xi| bump_chi(xi / m)))
}

/// Scale separating `P_Low` from `P_High`.
pub const LOW_SCALE: f64 = 1.0 / 32.0;

pub fn p_low(f: &SpectralField) -> SpectralField {
    apply_x_multiplier(f, |xi| bump_chi(xi / LOW_SCALE))
}

pub fn p_high(f: &SpectralField) -> SpectralField {
    apply_x_multiplier(f, |xi| 1.0 - bump_chi(xi / LOW_SCALE))
}

/// Dyadic exponents `m` such that `P_{2^m}` acts nontrivially on the lattice.
pub fn dyadic_range(f: &SpectralField) -> (i32, i32) {
    let g = f.grid();
    let xi_min = 2.0 * std::f64::consts::PI / g.length_x();
    let xi_max = xi_min * (g.nx() / 2) as f64;
    // eta_M lives on 5/8 M <= |xi| <= 8/5 M
    let lo = (xi_min / CHI_SUPPORT).log2().floor() as i32;
    let hi = (xi_max / (5.0 / 8.0)).log2().ceil() as i32;
    (lo, hi)
}
