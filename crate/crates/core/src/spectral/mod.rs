//! Grids, fields, transforms, Fourier multipliers, conserved functionals and
//! Littlewood-Paley projectors on `R x T_lambda`.

mod field;
mod functionals;
mod grid;
mod littlewood_paley;
mod operators;
mod random;
mod snapshot;
mod transform;

pub use field::{RealField, SpectralField};
pub use functionals::{energy, energy_norm, hamiltonian_c, l2_sq, mass, spectral_l2_sq};
pub use grid::{FrequencyPair, Grid};
pub use littlewood_paley::{
    bump_chi, dyadic_range, eta, lp_projector, lp_projector_leq, p_high, p_low, CHI_PLATEAU, CHI_SUPPORT,
    LOW_SCALE,
};
pub use operators::{
    apply_linear_group, bracket, check_constraint, dispersion_symbol, weight_p, x_antiderivative, x_derivative,
    y_derivative, CONSTRAINT_TOL,
};
pub use random::{band_limited_field, counter_rng, RandomFieldSpec};
pub use snapshot::{load_snapshot, read_snapshot, save_snapshot, write_snapshot, Snapshot, MAGIC};
pub use transform::{forward_transform, inverse_transform, Fft2, SYMMETRY_TOL};

pub(crate) use functionals::{energy_from_parts, energy_norm_sq_spectral, energy_weight};
pub(crate) use operators::{dxinv_dy, grid_symbol, xi_eff};
