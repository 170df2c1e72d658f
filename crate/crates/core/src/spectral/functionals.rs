use super::field::{RealField, SpectralField};
use super::operators::{check_constraint, q_eff, xi_eff};
use super::transform::Fft2;

use crate::error::Result;

/// `||f||^2_{L^2}` computed on the Fourier side (Parseval with the cell measure).
pub fn spectral_l2_sq(f: &SpectralField) -> f64 {
    f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() / f.grid().area()
}

/// `||u||^2_{L^2}` by quadrature.
pub fn l2_sq(u: &RealField) -> f64 {
    u.values().iter().map(|v| v * v).sum::<f64>() * u.grid().dx() * u.grid().dy()
}

/// Squared energy-space weight `1 + xi^2 + q^2/xi^2` at a grid mode, with the
/// Nyquist lines and the `xi = 0` column reduced consistently with the
/// derivative operators.
#[inline]
pub(crate) fn energy_weight(g: &super::Grid, i: usize, j: usize) -> f64 {
    let xi = xi_eff(g, i);
    if xi == 0.0 {
        1.0
    } else {
        let r = q_eff(g, j) / xi;
        1.0 + xi * xi + r * r
    }
}

pub(crate) fn energy_norm_sq_spectral(f: &SpectralField) -> f64 {
    let g = *f.grid();
    let mut acc = 0.0;
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            acc += energy_weight(&g, i, j) * f.at(i, j).norm_sqr();
        }
    }
    acc / g.area()
}

/// `||u||_E = || <xi> p(xi, q) u_hat ||_{L^2}`.
pub fn energy_norm(u: &RealField) -> Result<f64> {
    let f = Fft2::new(*u.grid()).forward(u);
    check_constraint(&f)?;
    Ok(energy_norm_sq_spectral(&f).sqrt())
}

/// Mass `int u^2`.
pub fn mass(u: &RealField) -> f64 {
    l2_sq(u)
}

/// Energy `int (u_x)^2 + (d_x^{-1} u_y)^2 - u^3/3`.
pub fn energy(u: &RealField) -> Result<f64> {
    let f = Fft2::new(*u.grid()).forward(u);
    check_constraint(&f)?;
    Ok(energy_from_parts(u, &f))
}

pub(crate) fn energy_from_parts(u: &RealField, f: &SpectralField) -> f64 {
    let g = *f.grid();
    let mut quad = 0.0;
    for j in 0..g.ny() {
        let q = q_eff(&g, j);
        for i in 0..g.nx() {
            let xi = xi_eff(&g, i);
            if xi == 0.0 {
                continue;
            }
            let r = q / xi;
            quad += (xi * xi + r * r) * f.at(i, j).norm_sqr();
        }
    }
    quad /= g.area();
    let cubic = u.values().iter().map(|v| v * v * v).sum::<f64>() * g.dx() * g.dy();
    quad - cubic / 3.0
}

/// Moving-frame Hamiltonian `E(u) + c M(u)`.
pub fn hamiltonian_c(u: &RealField, c: f64) -> Result<f64> {
    Ok(energy(u)? + c * mass(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn sine_mass() {
        let g = Grid::new(64, 8, 2.0 * PI, 1.0).unwrap();
        let u = RealField::from_fn(g, |x, _| x.sin()).unwrap();
        assert!((mass(&u) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn zero_field() {
        let g = Grid::new(16, 4, 10.0, 1.0).unwrap();
        let u = RealField::zeros(g);
        assert_eq!(energy_norm(&u).unwrap(), 0.0);
        assert_eq!(energy(&u).unwrap(), 0.0);
    }

    #[test]
    fn y_independent_energy_norm() {
        let g = Grid::new(64, 8, 2.0 * PI, 1.0).unwrap();
        let u = RealField::from_fn(g, |x, _| (2.0 * x).sin() + 0.5 * x.cos()).unwrap();
        let ux = RealField::from_fn(g, |x, _| 2.0 * (2.0 * x).cos() - 0.5 * x.sin()).unwrap();
        let expected = (l2_sq(&u) + l2_sq(&ux)).sqrt();
        assert!((energy_norm(&u).unwrap() - expected).abs() < 1e-12 * expected);
    }
}
