//! Transverse slices `B_c^k` of the Hessian of `E + c M` at `Q_c`:
//!
//! `B_c^k(v, v) = ||v'||^2 + k^2 ||d_x^{-1} v||^2 + c ||v||^2 - int Q_c v^2`.

use faer::{Mat, Side};
use rustfft::FftPlanner;
use num_complex::Complex64;

use super::soliton::soliton_value;
use crate::error::{KpError, Result};
use crate::spectral::{RealField, CONSTRAINT_TOL};

/// The pieces of `B_c^k` for one x profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianParts {
    pub dx_sq: f64,
    pub antideriv_sq: f64,
    pub l2_sq: f64,
    pub potential: f64,
}

impl HessianParts {
    /// `B_c^k` assembled from the parts.
    pub fn form(&self, c: f64, k: i64) -> f64 {
        self.kdv_hessian(c) + (k * k) as f64 * self.antideriv_sq
    }

    /// `B_c^0 = ||v'||^2 + c ||v||^2 - int Q_c v^2`.
    pub fn kdv_hessian(&self, c: f64) -> f64 {
        self.dx_sq + c * self.l2_sq - self.potential
    }
}

fn x_profile(v: &RealField) -> Result<&[f64]> {
    let scale = v.linf();
    if v.y_variation() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(KpError::DomainError("hessian slice must not depend on y".into()));
    }
    Ok(v.x_profile())
}

/// Norm pieces of an x profile sampled on `[-L/2, L/2)`.
pub fn hessian_parts(v: &RealField, c: f64) -> Result<HessianParts> {
    let profile = x_profile(v)?;
    let g = v.grid();
    let (n, dx, len) = (g.nx(), g.dx(), g.length_x());
    let mut buf: Vec<Complex64> = profile.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    // |v_hat|^2 with v_hat = dx * FFT (the x-offset phase drops out of moduli)
    let mut dx_sq = 0.0;
    let mut antideriv_sq = 0.0;
    for (i, z) in buf.iter().enumerate() {
        if i == 0 || i == n / 2 {
            continue;
        }
        let xi = g.xi(i);
        let p = z.norm_sqr() * dx * dx / len;
        dx_sq += xi * xi * p;
        antideriv_sq += p / (xi * xi);
    }
    let l2_sq = profile.iter().map(|x| x * x).sum::<f64>() * dx;
    let potential = profile
        .iter()
        .enumerate()
        .map(|(i, x)| soliton_value(c, g.x(i)) * x * x)
        .sum::<f64>()
        * dx;
    Ok(HessianParts { dx_sq, antideriv_sq, l2_sq, potential })
}

/// `B_c^k(v, v)` for a y-independent field `v` (its x profile is the slice).
pub fn hessian_form(v: &RealField, c: f64, k: i64) -> Result<f64> {
    if k != 0 {
        let profile = x_profile(v)?;
        let mean = profile.iter().sum::<f64>().abs();
        let scale = profile.iter().map(|x| x.abs()).sum::<f64>();
        if scale > 0.0 && mean > CONSTRAINT_TOL * scale {
            return Err(KpError::ConstraintViolation {
                what: "B_c^k with k != 0 needs a zero-mean slice",
                magnitude: mean / scale,
            });
        }
    }
    Ok(hessian_parts(v, c)?.form(c, k))
}

/// Best constant `kappa` in `B_c^k(v, v) >= kappa (||v||_{H^1}^2 + k^2 ||d_x^{-1} v||^2)`
/// over zero-mean `v`, with a minimizer.
#[derive(Debug, Clone)]
pub struct Coercivity {
    pub kappa: f64,
    /// Minimizing profile on the grid `x_i = -L/2 + i L/n`.
    pub minimizer: Vec<f64>,
}

/// Generalized eigenproblem `B v = kappa N v` in the real Fourier basis of
/// zero-mean, Nyquist-free profiles on a periodic box of length `length` with
/// `n` nodes.
pub fn hessian_coercivity(c: f64, k: i64, n: usize, length: f64) -> Result<Coercivity> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(KpError::DomainError(format!("n = {n} must be even and >= 8")));
    }
    let dx = length / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| -0.5 * length + i as f64 * dx).collect();
    let modes = n / 2 - 1;
    let dim = 2 * modes;
    let norm = (2.0 / length).sqrt();
    // basis[b][i]; b = 2(m-1) is cos, 2(m-1)+1 is sin
    let mut basis = vec![vec![0.0; n]; dim];
    let mut diag_b = vec![0.0; dim];
    let mut diag_n = vec![0.0; dim];
    let kk = (k * k) as f64;
    for m in 1..=modes {
        let xi = 2.0 * std::f64::consts::PI * m as f64 / length;
        for (s, b) in [2 * (m - 1), 2 * (m - 1) + 1].into_iter().enumerate() {
            for (i, &x) in xs.iter().enumerate() {
                basis[b][i] = norm * if s == 0 { (xi * x).cos() } else { (xi * x).sin() };
            }
            diag_b[b] = xi * xi + kk / (xi * xi) + c;
            diag_n[b] = 1.0 + xi * xi + kk / (xi * xi);
        }
    }
    let q: Vec<f64> = xs.iter().map(|&x| soliton_value(c, x) * dx).collect();
    let mut m = Mat::<f64>::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let pot: f64 = (0..n).map(|i| basis[a][i] * q[i] * basis[b][i]).sum();
            let mut v = -pot;
            if a == b {
                v += diag_b[a];
            }
            let v = v / (diag_n[a] * diag_n[b]).sqrt();
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    let eig = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| KpError::ConvergenceFailure(format!("eigensolver: {e:?}")))?;
    let kappa = eig.S().column_vector()[0];
    let u = eig.U();
    let mut minimizer = vec![0.0; n];
    for b in 0..dim {
        let coef = u[(b, 0)] / diag_n[b].sqrt();
        for i in 0..n {
            minimizer[i] += coef * basis[b][i];
        }
    }
    Ok(Coercivity { kappa, minimizer })
}
