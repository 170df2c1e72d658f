//! Fourth-order exponential time differencing Runge-Kutta (ETDRK4) for
//! `u_t = L u + N(u)` with `L = i (omega + c xi)` diagonal in Fourier space and
//! `N(u) = -(1/2) d_x (u^2)`.
//!
//! The phi-function coefficients are averaged over a circle of radius one
//! around `h L` in the complex plane, which is exact to rounding for both
//! tiny and huge `|h L|`.

use num_complex::Complex64;

use super::config::{SolverConfig, BLOWUP_THRESHOLD};
use crate::error::{KpError, Result};
use crate::spectral::{check_constraint, grid_symbol, xi_eff, Fft2, Grid, SpectralField};

/// Quadrature points on the phi-function contour.
pub const CONTOUR_POINTS: usize = 32;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Mask of modes kept by the quadratic term: Nyquist lines are always
/// dropped, and with dealiasing every `|index| > n/3` as well.
pub(crate) fn keep_mask(g: &Grid, dealias: bool) -> Vec<bool> {
    let (cx, cy) = (g.nx() as f64 / 3.0, g.ny() as f64 / 3.0);
    let mut keep = vec![true; g.len()];
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            let mut k = !(g.is_nyquist_x(i) || g.is_nyquist_y(j));
            if dealias {
                k &= (g.mode_x(i).abs() as f64) <= cx && (g.mode_y(j).abs() as f64) <= cy;
            }
            keep[g.index(i, j)] = k;
        }
    }
    keep
}

/// ETDRK4 coefficients for a single mode with `z = h L`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhiCoefficients {
    pub e: Complex64,
    pub e2: Complex64,
    pub q: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
}

pub(crate) fn phi_coefficients(z: Complex64, h: f64) -> PhiCoefficients {
    let mut q = ZERO;
    let mut f1 = ZERO;
    let mut f2 = ZERO;
    let mut f3 = ZERO;
    for k in 0..CONTOUR_POINTS {
        let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / CONTOUR_POINTS as f64;
        let r = z + Complex64::cis(theta);
        let er = r.exp();
        let r2 = r * r;
        let r3 = r2 * r;
        q += ((r * 0.5).exp() - 1.0) / r;
        f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
        f2 += (2.0 + r + er * (r - 2.0)) / r3;
        f3 += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
    }
    let w = h / CONTOUR_POINTS as f64;
    PhiCoefficients { e: z.exp(), e2: (z * 0.5).exp(), q: q * w, f1: f1 * w, f2: f2 * w, f3: f3 * w }
}

/// Per-run integrator state. Owns its FFT plan and scratch buffers.
pub struct Integrator {
    grid: Grid,
    h: f64,
    linear_only: bool,
    fft: Fft2,
    coef: Vec<PhiCoefficients>,
    keep: Vec<bool>,
    half_xi: Vec<f64>,
    physical: Vec<Complex64>,
    nv: Vec<Complex64>,
    na: Vec<Complex64>,
    nb: Vec<Complex64>,
    nc: Vec<Complex64>,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl Integrator {
    /// Integrator taking steps of exactly `h`.
    pub fn new(grid: Grid, cfg: &SolverConfig, h: f64) -> Result<Self> {
        cfg.validate()?;
        if !(h.is_finite() && h > 0.0) {
            return Err(KpError::InvalidConfig(format!("step {h} must be positive")));
        }
        let eps = cfg.epsilon_sign as f64;
        let c = cfg.moving_frame_speed;
        let mut coef = Vec::with_capacity(grid.len());
        let mut half_xi = Vec::with_capacity(grid.len());
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let xi = xi_eff(&grid, i);
                let symbol = if grid.is_nyquist_y(j) { 0.0 } else { grid_symbol(&grid, i, j, eps) + c * xi };
                coef.push(phi_coefficients(Complex64::new(0.0, h * symbol), h));
                half_xi.push(0.5 * xi);
            }
        }
        let n = grid.len();
        Ok(Self {
            grid,
            h,
            linear_only: cfg.linear_only,
            fft: Fft2::new(grid),
            coef,
            keep: keep_mask(&grid, cfg.dealias),
            half_xi,
            physical: vec![ZERO; n],
            nv: vec![ZERO; n],
            na: vec![ZERO; n],
            nb: vec![ZERO; n],
            nc: vec![ZERO; n],
            a: vec![ZERO; n],
            b: vec![ZERO; n],
            c: vec![ZERO; n],
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn step_size(&self) -> f64 {
        self.h
    }

    /// Writes `-(i xi / 2) F(u^2)` into `out` and returns `max |u|`.
    fn nonlinear(
        fft: &mut Fft2,
        keep: &[bool],
        half_xi: &[f64],
        physical: &mut [Complex64],
        v: &[Complex64],
        out: &mut [Complex64],
    ) -> f64 {
        for ((p, &x), &k) in physical.iter_mut().zip(v).zip(keep) {
            *p = if k { x } else { ZERO };
        }
        fft.inverse_in_place(physical);
        let mut linf = 0.0_f64;
        for p in physical.iter_mut() {
            let u = p.re;
            linf = if u.is_finite() { linf.max(u.abs()) } else { f64::INFINITY };
            *p = Complex64::new(u * u, 0.0);
        }
        fft.forward_in_place(physical);
        for (((o, p), &k), &hx) in out.iter_mut().zip(physical.iter()).zip(keep).zip(half_xi) {
            *o = if k { Complex64::new(p.im * hx, -p.re * hx) } else { ZERO };
        }
        linf
    }

    /// Quadratic term of a spectral state, `-(1/2) d_x (u^2)`.
    pub fn nonlinear_term(&mut self, v: &SpectralField) -> SpectralField {
        let mut out = vec![ZERO; self.grid.len()];
        Self::nonlinear(&mut self.fft, &self.keep, &self.half_xi, &mut self.physical, v.coeffs(), &mut out);
        SpectralField::from_raw(self.grid, out)
    }

    /// Advances `v` by one step in place. `t` is the time at the start of the
    /// step and is only used to label a blow-up.
    #[allow(clippy::needless_range_loop)]
    pub fn advance(&mut self, v: &mut SpectralField, t: f64) -> Result<()> {
        let coeffs = v.coeffs_mut();
        if self.linear_only {
            for (x, c) in coeffs.iter_mut().zip(&self.coef) {
                *x *= c.e;
            }
        } else {
            let linf = Self::nonlinear(&mut self.fft, &self.keep, &self.half_xi, &mut self.physical, coeffs, &mut self.nv);
            if !linf.is_finite() || linf > BLOWUP_THRESHOLD {
                return Err(KpError::BlowupDetected { t, linf });
            }
            for k in 0..coeffs.len() {
                let c = &self.coef[k];
                self.a[k] = c.e2 * coeffs[k] + c.q * self.nv[k];
            }
            Self::nonlinear(&mut self.fft, &self.keep, &self.half_xi, &mut self.physical, &self.a, &mut self.na);
            for k in 0..coeffs.len() {
                let c = &self.coef[k];
                self.b[k] = c.e2 * coeffs[k] + c.q * self.na[k];
            }
            Self::nonlinear(&mut self.fft, &self.keep, &self.half_xi, &mut self.physical, &self.b, &mut self.nb);
            for k in 0..coeffs.len() {
                let c = &self.coef[k];
                self.c[k] = c.e2 * self.a[k] + c.q * (2.0 * self.nb[k] - self.nv[k]);
            }
            Self::nonlinear(&mut self.fft, &self.keep, &self.half_xi, &mut self.physical, &self.c, &mut self.nc);
            for k in 0..coeffs.len() {
                let c = &self.coef[k];
                coeffs[k] = c.e * coeffs[k]
                    + c.f1 * self.nv[k]
                    + 2.0 * c.f2 * (self.na[k] + self.nb[k])
                    + c.f3 * self.nc[k];
            }
        }
        v.enforce_constraint();
        if v.coeffs().iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(KpError::BlowupDetected { t: t + self.h, linf: f64::INFINITY });
        }
        Ok(())
    }

    /// Inverse transform with this run's plan (no symmetry check).
    pub(crate) fn physical(&mut self, v: &SpectralField) -> crate::spectral::RealField {
        self.fft.inverse_unchecked(v)
    }

    pub(crate) fn fft(&mut self) -> &mut Fft2 {
        &mut self.fft
    }
}

/// Spectral coefficients of `-(1/2) d_x (u^2) = -u u_x`.
pub fn nonlinear_term(u: &SpectralField, dealias: bool) -> Result<SpectralField> {
    check_constraint(u)?;
    let cfg = SolverConfig { dealias, ..Default::default() };
    let mut integ = Integrator::new(*u.grid(), &cfg, cfg.dt)?;
    Ok(integ.nonlinear_term(u))
}

/// One step of size `cfg.dt`.
pub fn step(u: &SpectralField, cfg: &SolverConfig) -> Result<SpectralField> {
    check_constraint(u)?;
    let mut integ = Integrator::new(*u.grid(), cfg, cfg.dt)?;
    let mut v = u.clone();
    v.enforce_constraint();
    integ.advance(&mut v, 0.0)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(z: Complex64, h: f64) -> (Complex64, Complex64, Complex64, Complex64) {
        let ez = z.exp();
        let z2 = z * z;
        let z3 = z2 * z;
        (
            h * ((z * 0.5).exp() - 1.0) / z,
            h * (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3,
            h * (2.0 + z + ez * (z - 2.0)) / z3,
            h * (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3,
        )
    }

    #[test]
    fn contour_matches_direct_formula_away_from_zero() {
        for &z in &[Complex64::new(0.0, 5.0), Complex64::new(0.0, -37.0), Complex64::new(-3.0, 2.0)] {
            let c = phi_coefficients(z, 0.1);
            let (q, f1, f2, f3) = direct(z, 0.1);
            for (a, b) in [(c.q, q), (c.f1, f1), (c.f2, f2), (c.f3, f3)] {
                assert!((a - b).norm() < 1e-13 * b.norm().max(1e-3), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn contour_limits_at_zero() {
        let c = phi_coefficients(Complex64::new(0.0, 0.0), 1.0);
        assert!((c.q - 0.5).norm() < 1e-14);
        for f in [c.f1, c.f2, c.f3] {
            assert!((f - 1.0 / 6.0).norm() < 1e-14);
        }
        // tiny argument where the direct formula cancels catastrophically
        let c = phi_coefficients(Complex64::new(0.0, 1e-9), 1.0);
        assert!((c.f1 - 1.0 / 6.0).norm() < 1e-9);
    }

    #[test]
    fn mask_counts() {
        let g = Grid::new(16, 4, 1.0, 1.0).unwrap();
        let keep = keep_mask(&g, true);
        // |kx| <= 5.33 gives 11 modes, |ky| <= 1.33 gives 3 modes
        assert_eq!(keep.iter().filter(|&&k| k).count(), 11 * 3);
        let keep = keep_mask(&g, false);
        assert_eq!(keep.iter().filter(|&&k| k).count(), 15 * 3);
    }
}
