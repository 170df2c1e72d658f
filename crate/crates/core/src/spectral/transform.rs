//! Forward and inverse transforms with the continuous-measure normalization
//!
//! `u_hat(xi, q) = sum u(x, y) exp(-i (xi x + q y)) dx dy` and
//! `u(x, y) = (1 / |cell|) sum u_hat exp(i (xi x + q y))`, so that discrete
//! norms reproduce the integral norms with the `dq` measure carrying `1/lambda`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::{RealField, SpectralField};
use super::grid::Grid;
use crate::error::{KpError, Result};

/// Hermitian symmetry tolerance accepted by [`inverse_transform`].
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Reusable 2-D FFT plan for one grid. Owned by a single run.
pub struct Fft2 {
    grid: Grid,
    x_fwd: Arc<dyn Fft<f64>>,
    x_inv: Arc<dyn Fft<f64>>,
    y_fwd: Arc<dyn Fft<f64>>,
    y_inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    transposed: Vec<Complex64>,
}

impl Fft2 {
    pub fn new(grid: Grid) -> Self {
        let mut planner = FftPlanner::new();
        let x_fwd = planner.plan_fft_forward(grid.nx());
        let x_inv = planner.plan_fft_inverse(grid.nx());
        let y_fwd = planner.plan_fft_forward(grid.ny());
        let y_inv = planner.plan_fft_inverse(grid.ny());
        let scratch_len = [&x_fwd, &x_inv, &y_fwd, &y_inv]
            .iter()
            .map(|p| p.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Self {
            grid,
            x_fwd,
            x_inv,
            y_fwd,
            y_inv,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
            transposed: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn transform_2d(&mut self, buf: &mut [Complex64], forward: bool) {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let (px, py) = if forward {
            (&self.x_fwd, &self.y_fwd)
        } else {
            (&self.x_inv, &self.y_inv)
        };
        px.process_with_scratch(buf, &mut self.scratch);
        for j in 0..ny {
            for i in 0..nx {
                self.transposed[j + ny * i] = buf[i + nx * j];
            }
        }
        py.process_with_scratch(&mut self.transposed, &mut self.scratch);
        for i in 0..nx {
            for j in 0..ny {
                buf[i + nx * j] = self.transposed[j + ny * i];
            }
        }
    }

    /// Physical values to coefficients, in place.
    pub fn forward_in_place(&mut self, buf: &mut [Complex64]) {
        self.transform_2d(buf, true);
        let g = self.grid;
        let w = g.dx() * g.dy();
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                // x starts at -L/2, giving a (-1)^k phase.
                let s = if g.mode_x(i) % 2 == 0 { w } else { -w };
                buf[g.index(i, j)] *= s;
            }
        }
    }

    /// Coefficients to (complex) physical values, in place.
    pub fn inverse_in_place(&mut self, buf: &mut [Complex64]) {
        let g = self.grid;
        let w = 1.0 / g.area();
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let s = if g.mode_x(i) % 2 == 0 { w } else { -w };
                buf[g.index(i, j)] *= s;
            }
        }
        self.transform_2d(buf, false);
    }

    pub fn forward(&mut self, u: &RealField) -> SpectralField {
        debug_assert_eq!(u.grid(), &self.grid);
        let mut buf: Vec<Complex64> = u.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward_in_place(&mut buf);
        SpectralField::from_raw(self.grid, buf)
    }

    /// Inverse transform dropping the imaginary residue, without the symmetry check.
    pub fn inverse_unchecked(&mut self, f: &SpectralField) -> RealField {
        debug_assert_eq!(f.grid(), &self.grid);
        let mut buf = f.coeffs().to_vec();
        self.inverse_in_place(&mut buf);
        RealField::from_raw(self.grid, buf.into_iter().map(|c| c.re).collect())
    }

    pub fn inverse(&mut self, f: &SpectralField) -> Result<RealField> {
        let defect = f.hermitian_defect();
        if defect > SYMMETRY_TOL {
            return Err(KpError::SymmetryViolation { defect });
        }
        Ok(self.inverse_unchecked(f))
    }
}

/// Riemann-sum Fourier transform of a real field.
pub fn forward_transform(u: &RealField) -> SpectralField {
    Fft2::new(*u.grid()).forward(u)
}

/// Inverse of [`forward_transform`]. Rejects coefficient arrays that do not
/// represent real data.
pub fn inverse_transform(f: &SpectralField) -> Result<RealField> {
    Fft2::new(*f.grid()).inverse(f)
}
