//! Time integration of KP-I with exact linear propagation and an ETDRK4
//! treatment of the quadratic term.

mod config;
mod diagnostics;
mod etdrk4;
mod evolve;
mod scaling;

pub use config::{SolverConfig, BLOWUP_THRESHOLD};
pub use diagnostics::{diagnose, write_diagnostics_csv, DiagnosticsRecord, CSV_HEADER};
pub use etdrk4::{nonlinear_term, step, Integrator, CONTOUR_POINTS};
pub use evolve::{evolve, stationarity_residual, Evolution};
pub use scaling::{rescale, rescaled_grid, rescaled_time, scaling_norm_ratio};

pub(crate) use evolve::run_with;
