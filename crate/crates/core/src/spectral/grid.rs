use std::f64::consts::PI;

use crate::error::{KpError, Result};

/// Uniform grid on `[-L_x/2, L_x/2) x [0, 2*pi*lambda_y)`.
///
/// The x direction stands in for the real line (the box is taken large enough
/// for the data to decay), the y direction is genuinely periodic with period
/// `2*pi*lambda_y`, so the y frequencies live on the lattice `lambda_y^{-1} Z`.
///
/// Arrays over the grid are stored x-fastest: entry `(i, j)` sits at
/// `i + nx * j`. Spectral arrays use the same layout with FFT ordering along
/// each axis (index `i < n/2` is mode `i`, the rest are `i - n`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    nx: usize,
    ny: usize,
    length_x: f64,
    lambda_y: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, length_x: f64, lambda_y: f64) -> Result<Self> {
        if !nx.is_power_of_two() || nx < 16 {
            return Err(KpError::InvalidGrid(format!("nx = {nx} must be a power of two >= 16")));
        }
        if !ny.is_power_of_two() || ny < 4 {
            return Err(KpError::InvalidGrid(format!("ny = {ny} must be a power of two >= 4")));
        }
        if !(length_x.is_finite() && length_x > 0.0) {
            return Err(KpError::InvalidGrid(format!("length_x = {length_x} must be positive")));
        }
        if !(lambda_y.is_finite() && lambda_y >= 1.0) {
            return Err(KpError::InvalidGrid(format!("lambda_y = {lambda_y} must be >= 1")));
        }
        Ok(Self { nx, ny, length_x, lambda_y })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length_x(&self) -> f64 {
        self.length_x
    }

    pub fn lambda_y(&self) -> f64 {
        self.lambda_y
    }

    /// Period in y, `2*pi*lambda_y`.
    pub fn length_y(&self) -> f64 {
        2.0 * PI * self.lambda_y
    }

    /// Area of the periodic cell.
    pub fn area(&self) -> f64 {
        self.length_x * self.length_y()
    }

    pub fn dx(&self) -> f64 {
        self.length_x / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.length_y() / self.ny as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.length_x + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.dy()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i + self.nx * j
    }

    /// Signed mode number for an FFT-ordered x index.
    #[inline]
    pub fn mode_x(&self, i: usize) -> i64 {
        signed_mode(i, self.nx)
    }

    #[inline]
    pub fn mode_y(&self, j: usize) -> i64 {
        signed_mode(j, self.ny)
    }

    #[inline]
    pub fn is_nyquist_x(&self, i: usize) -> bool {
        i == self.nx / 2
    }

    #[inline]
    pub fn is_nyquist_y(&self, j: usize) -> bool {
        j == self.ny / 2
    }

    /// x frequency `2*pi*k/L_x` of an FFT-ordered index.
    #[inline]
    pub fn xi(&self, i: usize) -> f64 {
        2.0 * PI * self.mode_x(i) as f64 / self.length_x
    }

    /// y frequency `k/lambda_y` of an FFT-ordered index.
    #[inline]
    pub fn q(&self, j: usize) -> f64 {
        self.mode_y(j) as f64 / self.lambda_y
    }

    /// All x frequencies in ascending order, `k = -nx/2 .. nx/2-1`.
    pub fn xi_lattice(&self) -> Vec<f64> {
        let half = (self.nx / 2) as i64;
        (-half..half).map(|k| 2.0 * PI * k as f64 / self.length_x).collect()
    }

    /// All y frequencies in ascending order, `k = -ny/2 .. ny/2-1`.
    pub fn q_lattice(&self) -> Vec<f64> {
        let half = (self.ny / 2) as i64;
        (-half..half).map(|k| k as f64 / self.lambda_y).collect()
    }

    /// FFT index of the mirrored mode `-k`.
    #[inline]
    pub fn mirror_x(&self, i: usize) -> usize {
        (self.nx - i) % self.nx
    }

    #[inline]
    pub fn mirror_y(&self, j: usize) -> usize {
        (self.ny - j) % self.ny
    }

    /// Same mode counts with the physical sizes rescaled.
    pub fn with_lengths(&self, length_x: f64, lambda_y: f64) -> Result<Self> {
        Grid::new(self.nx, self.ny, length_x, lambda_y)
    }
}

fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Frequency pair `(xi, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyPair {
    pub xi: f64,
    pub q: f64,
}

impl FrequencyPair {
    pub fn new(xi: f64, q: f64) -> Self {
        Self { xi, q }
    }
}

impl std::ops::Add for FrequencyPair {
    type Output = FrequencyPair;
    fn add(self, rhs: Self) -> Self {
        FrequencyPair::new(self.xi + rhs.xi, self.q + rhs.q)
    }
}

impl std::ops::Sub for FrequencyPair {
    type Output = FrequencyPair;
    fn sub(self, rhs: Self) -> Self {
        FrequencyPair::new(self.xi - rhs.xi, self.q - rhs.q)
    }
}

impl std::ops::Neg for FrequencyPair {
    type Output = FrequencyPair;
    fn neg(self) -> Self {
        FrequencyPair::new(-self.xi, -self.q)
    }
}
