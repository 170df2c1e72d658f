//! The operator `L_c = d_x^4 - c d_x^2 + d_x Q_c d_x + 1` governing the
//! transverse slices of the Hessian, discretized with fourth-order periodic
//! finite differences, and the search for its negative eigenvalue.

use faer::{Mat, Side};
use serde::Serialize;

use super::soliton::soliton_value;
use crate::error::{KpError, Result};

/// Eigenvalues closer to 1 than this count as the bottom of the essential spectrum.
const ESSENTIAL_GAP: f64 = 1e-8;

/// Largest admissible disagreement between the `n` and `2n` resolutions.
pub const RESOLUTION_TOL: f64 = 1e-3;

// fourth-order central stencils on offsets -3..=3
const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
const D2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
const D4: [f64; 7] = [-1.0 / 6.0, 2.0, -39.0 / 6.0, 56.0 / 6.0, -39.0 / 6.0, 2.0, -1.0 / 6.0];

/// Discretization of `L_c` on `[-half_width, half_width)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedOperator {
    pub c: f64,
    pub n: usize,
    pub half_width: f64,
    /// Includes the `d_x Q_c d_x` term; switching it off leaves the
    /// constant-coefficient operator.
    pub with_soliton: bool,
}

impl LinearizedOperator {
    pub fn new(c: f64, n: usize, half_width: f64) -> Result<Self> {
        let op = Self { c, n, half_width, with_soliton: true };
        op.validate()?;
        Ok(op)
    }

    fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(KpError::DomainError(format!("c = {} must be positive", self.c)));
        }
        if self.n < 256 {
            return Err(KpError::DomainError(format!("n = {} must be >= 256", self.n)));
        }
        if self.half_width.is_nan() || self.half_width < 20.0 / self.c.sqrt() {
            return Err(KpError::DomainError(format!(
                "half_width = {} must be >= 20/sqrt(c) = {}",
                self.half_width,
                20.0 / self.c.sqrt()
            )));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (0..self.n).map(|i| -self.half_width + i as f64 * h).collect()
    }

    /// Dense symmetric matrix. The potential term is assembled as
    /// `-D^T diag(Q_c) D`, the adjoint form of `d_x Q_c d_x`.
    pub fn matrix(&self) -> Mat<f64> {
        let n = self.n;
        let h = self.h();
        let wrap = |i: isize| i.rem_euclid(n as isize) as usize;
        let mut a = Mat::<f64>::zeros(n, n);
        let (h2, h4) = (h * h, h * h * h * h);
        for i in 0..n {
            for (o, w) in D4.iter().enumerate() {
                let j = wrap(i as isize + o as isize - 3);
                a[(i, j)] += w / h4;
            }
            for (o, w) in D2.iter().enumerate() {
                let j = wrap(i as isize + o as isize - 2);
                a[(i, j)] -= self.c * w / h2;
            }
            a[(i, i)] += 1.0;
        }
        if self.with_soliton {
            for (r, x) in self.nodes().into_iter().enumerate() {
                let q = soliton_value(self.c, x) / h2;
                for (p, dp) in D1.iter().enumerate() {
                    if *dp == 0.0 {
                        continue;
                    }
                    let jp = wrap(r as isize + p as isize - 2);
                    for (s, ds) in D1.iter().enumerate() {
                        if *ds == 0.0 {
                            continue;
                        }
                        let js = wrap(r as isize + s as isize - 2);
                        a[(jp, js)] -= dp * q * ds;
                    }
                }
            }
        }
        a
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.matrix()
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| KpError::ConvergenceFailure(format!("eigensolver: {e:?}")))
    }

    /// Eigenvalues (ascending) and eigenvectors as columns.
    pub fn eigenpairs(&self) -> Result<(Vec<f64>, Mat<f64>)> {
        let eig = self
            .matrix()
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| KpError::ConvergenceFailure(format!("eigensolver: {e:?}")))?;
        let values = eig.S().column_vector().iter().copied().collect();
        Ok((values, eig.U().to_owned()))
    }
}

/// Dense symmetric discretization of `L_c` with `n` nodes on `[-half_width, half_width)`.
pub fn linearized_operator_matrix(c: f64, n: usize, half_width: f64) -> Result<Mat<f64>> {
    Ok(LinearizedOperator::new(c, n, half_width)?.matrix())
}

/// Resolution used for eigenvalue searches; the finer grid has `2n` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSettings {
    pub n: usize,
    pub half_width: f64,
}

impl Default for SpectrumSettings {
    fn default() -> Self {
        Self { n: 1024, half_width: 40.0 }
    }
}

/// Bottom of the spectrum of `L_c` at one speed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub c: f64,
    /// Richardson-extrapolated lowest eigenvalue.
    pub min_eigenvalue: f64,
    /// `|extrapolated - fine|`.
    pub error_estimate: f64,
    /// Extrapolated discrete eigenvalues below the essential spectrum, ascending.
    pub eigenvalues_below_one: Vec<f64>,
    /// Node count of the finer resolution.
    pub grid_n: usize,
    pub domain_half_width: f64,
}

fn richardson(coarse: f64, fine: f64) -> f64 {
    fine + (fine - coarse) / 15.0
}

/// Lowest eigenvalues of `L_c` at resolutions `n` and `2n`, combined by
/// fourth-order Richardson extrapolation.
pub fn min_eigenvalue_with(c: f64, settings: &SpectrumSettings) -> Result<SpectrumResult> {
    let coarse = LinearizedOperator::new(c, settings.n, settings.half_width)?.eigenvalues()?;
    let fine = LinearizedOperator::new(c, 2 * settings.n, settings.half_width)?.eigenvalues()?;
    let gap = (fine[0] - coarse[0]).abs();
    if gap > RESOLUTION_TOL {
        return Err(KpError::ConvergenceFailure(format!(
            "lowest eigenvalue at c = {c} moves by {gap:e} between n = {} and n = {}",
            settings.n,
            2 * settings.n
        )));
    }
    let below = |v: &[f64]| v.iter().take_while(|&&l| l < 1.0 - ESSENTIAL_GAP).count();
    let count = below(&coarse).min(below(&fine));
    let eigenvalues_below_one: Vec<f64> = (0..count).map(|i| richardson(coarse[i], fine[i])).collect();
    let min_eigenvalue = richardson(coarse[0], fine[0]);
    Ok(SpectrumResult {
        c,
        min_eigenvalue,
        error_estimate: (min_eigenvalue - fine[0]).abs(),
        eigenvalues_below_one,
        grid_n: 2 * settings.n,
        domain_half_width: settings.half_width,
    })
}

/// [`min_eigenvalue_with`] at the default resolution.
pub fn min_eigenvalue(c: f64) -> Result<SpectrumResult> {
    min_eigenvalue_with(c, &SpectrumSettings::default())
}

/// Outcome of a bisection on the sign of the lowest eigenvalue.
#[derive(Debug, Clone)]
pub struct CriticalScan {
    pub critical_speed: f64,
    pub bracket: (f64, f64),
    /// Every evaluated speed, in evaluation order.
    pub evaluations: Vec<SpectrumResult>,
}

/// Bisects `steps` times on the sign of `min_eigenvalue(c)` over `[c_min, c_max]`.
pub fn critical_speed_scan_with(
    c_min: f64,
    c_max: f64,
    steps: usize,
    settings: &SpectrumSettings,
) -> Result<CriticalScan> {
    if !(c_min > 0.0 && c_max > c_min) {
        return Err(KpError::DomainError(format!("invalid speed range [{c_min}, {c_max}]")));
    }
    let mut evaluations = Vec::with_capacity(steps + 2);
    let eval = |c: f64, evals: &mut Vec<SpectrumResult>| -> Result<f64> {
        let r = min_eigenvalue_with(c, settings)?;
        let v = r.min_eigenvalue;
        evals.push(r);
        Ok(v)
    };
    let (mut lo, mut hi) = (c_min, c_max);
    let f_lo = eval(lo, &mut evaluations)?;
    let f_hi = eval(hi, &mut evaluations)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(KpError::ConvergenceFailure(format!(
            "lowest eigenvalue has the same sign at c = {c_min} ({f_lo:.4}) and c = {c_max} ({f_hi:.4})"
        )));
    }
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        let f_mid = eval(mid, &mut evaluations)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalScan { critical_speed: 0.5 * (lo + hi), bracket: (lo, hi), evaluations })
}

/// Speed at which the lowest eigenvalue of `L_c` changes sign.
pub fn critical_speed_scan(c_min: f64, c_max: f64, steps: usize) -> Result<f64> {
    Ok(critical_speed_scan_with(c_min, c_max, steps, &SpectrumSettings::default())?.critical_speed)
}

/// `1 - 3 c^2 / 16`: the only value a negative eigenvalue can take.
pub fn predicted_eigenvalue(c: f64) -> f64 {
    1.0 - 3.0 * c * c / 16.0
}

/// Threshold speed `4 / sqrt(3)`.
pub fn critical_speed() -> f64 {
    4.0 / 3f64.sqrt()
}

/// Writes `c,min_eigenvalue,error_estimate,grid_n` rows.
pub fn write_spectrum_csv<W: std::io::Write>(w: W, rows: &[SpectrumResult]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| KpError::Io(e.into());
    out.write_record(["c", "min_eigenvalue", "error_estimate", "grid_n"]).map_err(io)?;
    for r in rows {
        out.write_record([
            r.c.to_string(),
            r.min_eigenvalue.to_string(),
            r.error_estimate.to_string(),
            r.grid_n.to_string(),
        ])
        .map_err(io)?;
    }
    out.flush()?;
    Ok(())
}
