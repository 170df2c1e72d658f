use crate::error::{KpError, Result};

/// Default `linf` threshold above which a run is declared blown up.
pub const BLOWUP_THRESHOLD: f64 = 1e6;

/// Time-integration settings for one run.
///
/// `dt` is only checked for positivity and finiteness: the linear part is
/// propagated exactly, so there is no dispersive CFL limit. The defaults are
/// empirical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    /// 2/3-rule dealiasing of the quadratic term.
    pub dealias: bool,
    /// Frame speed `c`; 0 is the lab frame.
    pub moving_frame_speed: f64,
    /// Sample diagnostics every this many steps.
    pub record_every: usize,
    /// `-1` for KP-I, `+1` for KP-II.
    pub epsilon_sign: i8,
    /// Drops the nonlinearity (testing hook).
    pub linear_only: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 1.0,
            dealias: true,
            moving_frame_speed: 0.0,
            record_every: 100,
            epsilon_sign: -1,
            linear_only: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(KpError::InvalidConfig(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(KpError::InvalidConfig(format!("t_end = {} must be positive", self.t_end)));
        }
        if !self.moving_frame_speed.is_finite() {
            return Err(KpError::InvalidConfig("moving_frame_speed must be finite".into()));
        }
        if self.record_every == 0 {
            return Err(KpError::InvalidConfig("record_every must be >= 1".into()));
        }
        if self.epsilon_sign != -1 && self.epsilon_sign != 1 {
            return Err(KpError::InvalidConfig(format!("epsilon_sign = {} must be -1 or +1", self.epsilon_sign)));
        }
        Ok(())
    }

    /// Number of uniform steps used to reach `t_end` and the step actually taken.
    pub fn step_plan(&self) -> (usize, f64) {
        let n = ((self.t_end / self.dt) - 1e-9).ceil().max(1.0) as usize;
        (n, self.t_end / n as f64)
    }
}
