//! Fourier multipliers: the KP-I dispersion symbol, the linear group and the
//! derivatives defining the energy space. Every multiplier zeroes the Nyquist
//! lines.

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::{FrequencyPair, Grid};
use crate::error::{KpError, Result};

/// Relative size above which a `(0, q)` coefficient counts as a violation.
pub const CONSTRAINT_TOL: f64 = 1e-10;

/// `omega(xi, q) = xi^3 + q^2 / xi`, with `omega(0, q) := 0`.
pub fn dispersion_symbol(zeta: FrequencyPair) -> f64 {
    if zeta.xi == 0.0 {
        0.0
    } else {
        zeta.xi.powi(3) + zeta.q * zeta.q / zeta.xi
    }
}

/// Japanese bracket `<x> = sqrt(1 + x^2)`.
pub fn bracket(x: f64) -> f64 {
    x.hypot(1.0)
}

/// Energy-space weight `p(xi, q) = < <xi>^{-1} q / xi >`.
pub fn weight_p(zeta: FrequencyPair) -> Result<f64> {
    if zeta.xi == 0.0 {
        return Err(KpError::DomainError("weight p is undefined at xi = 0".into()));
    }
    Ok(bracket(zeta.q / (zeta.xi * bracket(zeta.xi))))
}

/// x frequency with the Nyquist line mapped to zero.
#[inline]
pub(crate) fn xi_eff(g: &Grid, i: usize) -> f64 {
    if g.is_nyquist_x(i) {
        0.0
    } else {
        g.xi(i)
    }
}

#[inline]
pub(crate) fn q_eff(g: &Grid, j: usize) -> f64 {
    if g.is_nyquist_y(j) {
        0.0
    } else {
        g.q(j)
    }
}

#[inline]
pub(crate) fn on_nyquist(g: &Grid, i: usize, j: usize) -> bool {
    g.is_nyquist_x(i) || g.is_nyquist_y(j)
}

/// Symbol used by the solver on the grid: `xi^3 - eps q^2/xi` (KP-I: `eps = -1`).
pub(crate) fn grid_symbol(g: &Grid, i: usize, j: usize, epsilon_sign: f64) -> f64 {
    let xi = xi_eff(g, i);
    if xi == 0.0 {
        return 0.0;
    }
    let q = q_eff(g, j);
    xi.powi(3) - epsilon_sign * q * q / xi
}

fn check_x_mean(f: &SpectralField, include_zero_mode: bool) -> Result<()> {
    let scale = f.max_abs();
    if scale == 0.0 {
        return Ok(());
    }
    let g = f.grid();
    let start = if include_zero_mode { 0 } else { 1 };
    let worst = (start..g.ny()).map(|j| f.at(0, j).norm()).fold(0.0, f64::max) / scale;
    if worst > CONSTRAINT_TOL {
        let what = if include_zero_mode {
            "x-antiderivative needs u_hat(0, q) = 0 for every q"
        } else {
            "u_hat(0, q) must vanish for q != 0"
        };
        return Err(KpError::ConstraintViolation { what, magnitude: worst });
    }
    Ok(())
}

/// Checks `u_hat(0, q) = 0` for `q != 0`.
pub fn check_constraint(f: &SpectralField) -> Result<()> {
    check_x_mean(f, false)
}

/// `U(t)`: multiplies each coefficient by `exp(i t omega(xi, q))`.
pub fn apply_linear_group(f: &SpectralField, t: f64) -> Result<SpectralField> {
    check_constraint(f)?;
    let g = *f.grid();
    Ok(f.map_modes(|i, j| {
        if on_nyquist(&g, i, j) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::cis(t * grid_symbol(&g, i, j, -1.0))
        }
    }))
}

pub fn x_derivative(f: &SpectralField) -> SpectralField {
    let g = *f.grid();
    f.map_modes(|i, _| Complex64::new(0.0, xi_eff(&g, i)))
}

pub fn y_derivative(f: &SpectralField) -> SpectralField {
    let g = *f.grid();
    f.map_modes(|i, j| {
        if g.is_nyquist_x(i) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, q_eff(&g, j))
        }
    })
}

/// Division by `i xi`. Requires the field to have no `xi = 0` content at all.
pub fn x_antiderivative(f: &SpectralField) -> Result<SpectralField> {
    check_x_mean(f, true)?;
    Ok(unchecked_x_antiderivative(f))
}

pub(crate) fn unchecked_x_antiderivative(f: &SpectralField) -> SpectralField {
    let g = *f.grid();
    f.map_modes(|i, _| {
        let xi = xi_eff(&g, i);
        if xi == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -1.0 / xi)
        }
    })
}

/// `d_x^{-1} d_y`, the third component of the energy space. The `xi = 0`
/// column is dropped (it is zero under the constraint).
pub(crate) fn dxinv_dy(f: &SpectralField) -> SpectralField {
    let g = *f.grid();
    f.map_modes(|i, j| {
        let xi = xi_eff(&g, i);
        if xi == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(q_eff(&g, j) / xi, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{forward_transform, inverse_transform, RealField};
    use std::f64::consts::PI;

    #[test]
    fn symbol_values() {
        assert_eq!(dispersion_symbol(FrequencyPair::new(1.0, 0.0)), 1.0);
        assert_eq!(dispersion_symbol(FrequencyPair::new(2.0, 2.0)), 10.0);
        assert_eq!(dispersion_symbol(FrequencyPair::new(-1.0, 1.0)), -2.0);
        assert_eq!(dispersion_symbol(FrequencyPair::new(0.0, 3.0)), 0.0);
    }

    #[test]
    fn weight_values() {
        assert_eq!(weight_p(FrequencyPair::new(1.0, 0.0)).unwrap(), 1.0);
        let p = weight_p(FrequencyPair::new(1.0, 1.0)).unwrap();
        assert!((p - 1.5_f64.sqrt()).abs() < 1e-15);
        // <1> p = sqrt(2) sqrt(3/2) = sqrt(3)
        assert!((bracket(1.0) * p - 3.0_f64.sqrt()).abs() < 1e-15);
        assert!(matches!(weight_p(FrequencyPair::new(0.0, 1.0)), Err(KpError::DomainError(_))));
    }

    #[test]
    fn antiderivative_of_cosine() {
        let g = Grid::new(32, 4, 2.0 * PI, 1.0).unwrap();
        let u = RealField::from_fn(g, |x, _| x.cos()).unwrap();
        let v = inverse_transform(&x_antiderivative(&forward_transform(&u)).unwrap()).unwrap();
        for i in 0..g.nx() {
            assert!((v.at(i, 2) - g.x(i).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn antiderivative_rejects_x_mean() {
        let g = Grid::new(32, 4, 2.0 * PI, 1.0).unwrap();
        let u = RealField::from_fn(g, |x, y| x.cos() + y.cos()).unwrap();
        let err = x_antiderivative(&forward_transform(&u)).unwrap_err();
        assert!(matches!(err, KpError::ConstraintViolation { .. }));
    }

    #[test]
    fn linear_group_phase_of_single_mode() {
        // (xi, q) = (1, 1): omega = 2
        let g = Grid::new(16, 4, 2.0 * PI, 1.0).unwrap();
        let mut f = SpectralField::zeros(g);
        f.coeffs_mut()[g.index(1, 1)] = Complex64::new(1.0, 0.0);
        let t = 0.731;
        let out = apply_linear_group(&f, t).unwrap();
        assert!((out.at(1, 1) - Complex64::cis(2.0 * t)).norm() < 1e-15);
        let id = apply_linear_group(&f, 0.0).unwrap();
        assert_eq!(id, f);
    }

    #[test]
    fn linear_group_rejects_constraint_violation() {
        let g = Grid::new(16, 4, 2.0 * PI, 1.0).unwrap();
        let mut f = SpectralField::zeros(g);
        f.coeffs_mut()[g.index(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(apply_linear_group(&f, 1.0).is_err());
    }
}
