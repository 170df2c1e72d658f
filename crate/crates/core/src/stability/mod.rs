//! Line solitons, their orbital distance, the Hessian slices and the
//! linearized operator whose negative eigenvalue signals transverse instability.

mod eigenfunction;
mod experiment;
mod hessian;
mod linearized;
mod orbital;
mod soliton;

pub use eigenfunction::{
    characteristic_defect, eigenfunction_derivatives, threshold_speed, verify_exact_eigenfunction,
    EIGENFUNCTION_HALF_WIDTH,
};
pub use experiment::{
    run_stability_experiment, transverse_perturbation, StabilityRun, StabilityRunConfig, DISTANCE_FLOOR,
    INSTABILITY_FACTOR,
};
pub use hessian::{hessian_coercivity, hessian_form, hessian_parts, Coercivity, HessianParts};
pub use linearized::{
    critical_speed, critical_speed_scan, critical_speed_scan_with, linearized_operator_matrix, min_eigenvalue,
    min_eigenvalue_with, predicted_eigenvalue, write_spectrum_csv, CriticalScan, LinearizedOperator,
    SpectrumResult, SpectrumSettings, RESOLUTION_TOL,
};
pub use orbital::{orbital_distance, translate_x, OrbitalFit, OrbitalMetric};
pub use soliton::{soliton_derivative, soliton_profile, soliton_value, SolitonParams, DECAY_TOL};
