use num_complex::Complex64;

use super::config::SolverConfig;
use super::diagnostics::{diagnose_parts, DiagnosticsRecord};
use super::etdrk4::Integrator;
use crate::error::{KpError, Result};
use crate::spectral::{check_constraint, dxinv_dy, l2_sq, x_derivative, Fft2, RealField, SpectralField};

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub final_field: RealField,
    pub t_end: f64,
    pub records: Vec<DiagnosticsRecord>,
}

/// What a run produced, including a run stopped by blow-up.
#[derive(Debug)]
pub(crate) struct RunOutcome {
    pub records: Vec<DiagnosticsRecord>,
    pub last_field: RealField,
    pub last_t: f64,
    pub blowup: Option<KpError>,
}

/// Drives a run, sampling diagnostics every `record_every` steps plus the
/// first and last state. `observe` may attach an orbital distance to a sample.
pub(crate) fn run_with<F>(u0: &RealField, cfg: &SolverConfig, mut observe: F) -> Result<RunOutcome>
where
    F: FnMut(&RealField, &SpectralField) -> Option<f64>,
{
    cfg.validate()?;
    let grid = *u0.grid();
    let (steps, h) = cfg.step_plan();
    let mut integ = Integrator::new(grid, cfg, h)?;
    let mut v = integ.fft().forward(u0);
    check_constraint(&v)?;
    v.enforce_constraint();

    let c = cfg.moving_frame_speed;
    let mut records = Vec::with_capacity(steps / cfg.record_every + 2);
    let mut sample = |integ: &mut Integrator, v: &SpectralField, t: f64, records: &mut Vec<DiagnosticsRecord>| {
        let u = integ.physical(v);
        let mut rec = diagnose_parts(&u, v, t, c);
        rec.orbital_distance = observe(&u, v);
        records.push(rec);
        u
    };

    let mut last_field = sample(&mut integ, &v, 0.0, &mut records);
    let mut t = 0.0;
    for n in 1..=steps {
        if let Err(e) = integ.advance(&mut v, t) {
            return Ok(RunOutcome { records, last_field, last_t: t, blowup: Some(e) });
        }
        t = n as f64 * h;
        if n % cfg.record_every == 0 || n == steps {
            last_field = sample(&mut integ, &v, t, &mut records);
        }
    }
    Ok(RunOutcome { records, last_field, last_t: t, blowup: None })
}

/// Integrates KP-I (or the moving-frame form when `moving_frame_speed != 0`)
/// from `u0` up to `cfg.t_end`.
pub fn evolve(u0: &RealField, cfg: &SolverConfig) -> Result<Evolution> {
    let out = run_with(u0, cfg, |_, _| None)?;
    if let Some(e) = out.blowup {
        return Err(e);
    }
    Ok(Evolution { final_field: out.last_field, t_end: out.last_t, records: out.records })
}

/// `L^2` norm of `-c u_x + u_xxx - d_x^{-1} u_yy + u u_x`, the moving-frame
/// KP-I operator applied to a time-independent profile.
pub fn stationarity_residual(u: &RealField, c: f64) -> Result<f64> {
    let grid = *u.grid();
    let mut fft = Fft2::new(grid);
    let mut f = fft.forward(u);
    check_constraint(&f)?;
    f.enforce_constraint();
    // linear part: -c i xi + (i xi)^3 - (i q)^2/(i xi) = -i (c xi + xi^3 + q^2/xi)
    let dxdy = dxinv_dy(&f);
    let ux = x_derivative(&f);
    let lin = SpectralField::from_raw(
        grid,
        (0..grid.len())
            .map(|k| {
                let xi = crate::spectral::xi_eff(&grid, k % grid.nx());
                // -c u_x + u_xxx = (-c - xi^2) * (i xi u_hat)
                ux.coeffs()[k] * (-c - xi * xi) + dxdy.coeffs()[k] * Complex64::new(0.0, xi_q_factor(&grid, k))
            })
            .collect(),
    );
    let lin = fft.inverse_unchecked(&lin);
    let ux = fft.inverse_unchecked(&ux);
    let u = fft.inverse_unchecked(&f);
    let r: Vec<f64> = (0..grid.len()).map(|k| lin.values()[k] + u.values()[k] * ux.values()[k]).collect();
    Ok(l2_sq(&RealField::from_raw(grid, r)).sqrt())
}

// -d_x^{-1} d_y^2 u = -(d_y) (d_x^{-1} d_y u): multiplier -i q on d_x^{-1} d_y u.
fn xi_q_factor(grid: &crate::spectral::Grid, k: usize) -> f64 {
    let j = k / grid.nx();
    if grid.is_nyquist_y(j) {
        0.0
    } else {
        -grid.q(j)
    }
}
