//! Perturbed-soliton runs in the co-moving frame, tracking the distance to
//! the soliton orbit.

use super::orbital::OrbitalMetric;
use super::soliton::{soliton_profile, soliton_value, SolitonParams};
use crate::error::{KpError, Result};
use crate::solver::{run_with, DiagnosticsRecord, SolverConfig};
use crate::spectral::{energy_norm, x_derivative, Fft2, FrequencyPair, Grid, RealField};

/// A distance above `INSTABILITY_FACTOR * delta` marks a run as unstable.
pub const INSTABILITY_FACTOR: f64 = 10.0;

/// Distances below this are discretization noise, whatever `delta` is.
pub const DISTANCE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct StabilityRunConfig {
    pub c: f64,
    /// Size of the perturbation in the energy norm.
    pub delta: f64,
    /// Carrier `(xi_p, q_p)` of the localized perturbation.
    pub perturbation_mode: FrequencyPair,
    pub t_end: f64,
    /// `t_end` and `moving_frame_speed` are overridden by the run.
    pub solver: SolverConfig,
    pub grid: Grid,
}

impl StabilityRunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta >= 0.0 && self.delta < 1.0) {
            return Err(KpError::InvalidConfig(format!("delta = {} must lie in [0, 1)", self.delta)));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(KpError::InvalidConfig(format!("t_end = {} must be positive", self.t_end)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct StabilityRun {
    /// Diagnostics with `orbital_distance` filled in.
    pub records: Vec<DiagnosticsRecord>,
    /// Set when the run stopped on blow-up.
    pub blowup_time: Option<f64>,
    pub sup_distance: f64,
    pub unstable: bool,
}

/// `d_x [Q_c(x) cos(xi_p x)] cos(q_p y)`, scaled to unit energy norm.
///
/// The x derivative keeps it inside the zero-x-mean class; the soliton
/// envelope keeps it where the transverse instability lives.
pub fn transverse_perturbation(grid: &Grid, c: f64, mode: FrequencyPair) -> Result<RealField> {
    let base = RealField::from_fn(*grid, |x, y| soliton_value(c, x) * (mode.xi * x).cos() * (mode.q * y).cos())?;
    let mut fft = Fft2::new(*grid);
    let mut d = x_derivative(&fft.forward(&base));
    d.enforce_constraint();
    let w = fft.inverse_unchecked(&d);
    let n = energy_norm(&w)?;
    if n == 0.0 {
        return Err(KpError::DomainError("perturbation vanishes on this grid".into()));
    }
    Ok(w.scaled(1.0 / n))
}

/// Evolves `Q_c + delta w` in the frame moving at speed `c`, recording the
/// orbital distance at every sample. Blow-up ends the run and marks it unstable.
pub fn run_stability_experiment(cfg: &StabilityRunConfig) -> Result<StabilityRun> {
    cfg.validate()?;
    let q = soliton_profile(&SolitonParams::new(cfg.c, 0.0)?, &cfg.grid)?;
    let u0 = if cfg.delta > 0.0 {
        let w = transverse_perturbation(&cfg.grid, cfg.c, cfg.perturbation_mode)?;
        q.axpy(cfg.delta, &w)?
    } else {
        q
    };
    let solver = SolverConfig { t_end: cfg.t_end, moving_frame_speed: cfg.c, ..cfg.solver };
    let metric = OrbitalMetric::new(cfg.grid, cfg.c)?;
    let out = run_with(&u0, &solver, |_, f| Some(metric.fit(f).distance))?;
    let sup_distance = out.records.iter().filter_map(|r| r.orbital_distance).fold(0.0, f64::max);
    let blowup_time = out.blowup.as_ref().map(|_| out.last_t);
    let unstable = blowup_time.is_some() || sup_distance > (INSTABILITY_FACTOR * cfg.delta).max(DISTANCE_FLOOR);
    Ok(StabilityRun { records: out.records, blowup_time, sup_distance, unstable })
}
