use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{KpError, Result};

/// Real samples of `u(x, y)` on a [`Grid`], x index fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(KpError::ShapeMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(KpError::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    /// Samples `f(x, y)` at every grid node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny() {
            let y = grid.y(j);
            for i in 0..grid.nx() {
                values.push(f(grid.x(i), y));
            }
        }
        Self::new(grid, values)
    }

    pub(crate) fn from_raw(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Riemann-sum integral over the periodic cell.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx() * self.grid.dy()
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|v| alpha * v).collect())
    }

    /// Pointwise `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &RealField) -> Result<Self> {
        check_same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + alpha * b).collect();
        Ok(Self::from_raw(self.grid, values))
    }

    /// Largest deviation of any y-slice from the `j = 0` slice.
    pub fn y_variation(&self) -> f64 {
        let nx = self.grid.nx();
        let first = &self.values[..nx];
        self.values
            .chunks(nx)
            .skip(1)
            .flat_map(|row| row.iter().zip(first).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }

    /// The `j = 0` row, i.e. the x profile of a y-independent field.
    pub fn x_profile(&self) -> &[f64] {
        &self.values[..self.grid.nx()]
    }
}

/// Fourier coefficients `u_hat(xi, q)` on a [`Grid`] in FFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(KpError::ShapeMismatch { expected: grid.len(), got: coeffs.len() });
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(KpError::NonFinite { index });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self { grid, coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub(crate) fn from_raw(grid: Grid, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        Self { grid, coeffs }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }

    /// Largest `|u_hat(-k) - conj(u_hat(k))|` relative to the largest coefficient.
    pub fn hermitian_defect(&self) -> f64 {
        let g = &self.grid;
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for j in 0..g.ny() {
            let mj = g.mirror_y(j);
            for i in 0..g.nx() {
                let a = self.coeffs[g.index(i, j)];
                let b = self.coeffs[g.index(g.mirror_x(i), mj)];
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst / scale
    }

    /// Largest `|u_hat(0, q)|` over `q != 0`, relative to the largest coefficient.
    pub fn x_mean_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let g = &self.grid;
        (1..g.ny()).map(|j| self.coeffs[g.index(0, j)].norm()).fold(0.0, f64::max) / scale
    }

    /// Zeroes `u_hat(0, q)` for `q != 0` and both Nyquist lines.
    pub fn enforce_constraint(&mut self) {
        let g = self.grid;
        let zero = Complex64::new(0.0, 0.0);
        for j in 0..g.ny() {
            if j != 0 {
                self.coeffs[g.index(0, j)] = zero;
            }
            self.coeffs[g.index(g.nx() / 2, j)] = zero;
        }
        let jn = g.ny() / 2;
        for i in 0..g.nx() {
            self.coeffs[g.index(i, jn)] = zero;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self::from_raw(self.grid, self.coeffs.iter().map(|c| c * alpha).collect())
    }

    pub fn axpy(&self, alpha: f64, other: &SpectralField) -> Result<Self> {
        check_same_grid(&self.grid, &other.grid)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b * alpha).collect();
        Ok(Self::from_raw(self.grid, coeffs))
    }

    /// Multiplies every coefficient by `m(i, j)` (FFT-ordered indices).
    pub fn map_modes(&self, m: impl Fn(usize, usize) -> Complex64) -> Self {
        let g = self.grid;
        let mut coeffs = self.coeffs.clone();
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let k = g.index(i, j);
                coeffs[k] *= m(i, j);
            }
        }
        Self::from_raw(g, coeffs)
    }
}

pub(crate) fn check_same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a != b {
        return Err(KpError::InvalidGrid("fields live on different grids".into()));
    }
    Ok(())
}
