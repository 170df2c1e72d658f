//! Quantitative checks of the harmonic-analysis estimates behind the
//! well-posedness theory: resonance identities, level-set measures and the
//! anisotropic Sobolev inequality.

mod measure;
mod resonance;
mod sobolev;
mod verify;

pub use measure::{
    level_set_measure, parabola_level_measure, section_projection_measure, Interval, LevelSetQuery, MeasureCheck,
    Phi, SectionSet, Trapezoid, CALIBRATION_CONSTANT, MEASURE_SLACK,
};
pub use resonance::{
    resonance, resonance_forms, resonance_gradient_q1, ResonanceForms, ResonanceTriple, HYPERPLANE_TOL,
};
pub use sobolev::{anisotropic_sobolev_check, SobolevCheck};
pub use verify::{report_json, run_suite, sobolev_counterexample, Suite, SuiteReport, GRADIENT_TOL, RESONANCE_TOL};
