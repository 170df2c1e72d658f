//! Pseudo-spectral simulation of the KP-I equation
//! `u_t + u_xxx - d_x^{-1} u_yy + u u_x = 0` on a periodic box, with tools for
//! line-soliton stability and numerical checks of the harmonic-analysis
//! estimates used in its well-posedness theory.
//!
//! * [`spectral`]: grids, transforms, Fourier multipliers, functionals.
//! * [`solver`]: ETDRK4 time stepping, diagnostics, scaling.
//! * [`stability`]: solitons, orbital distance, Hessian slices, the linearized operator.
//! * [`analysis`]: resonance identities, level-set measures, the anisotropic Sobolev check.
//! * [`cli`]: the `kpi-lab` command line.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod solver;
pub mod spectral;
pub mod stability;

pub use error::{KpError, Result};
