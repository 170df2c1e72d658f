//! Orbital distance of a perturbed soliton and the transverse Hessian constants.

use std::f64::consts::PI;

use kpi_lab::spectral::{Grid, RealField};
use kpi_lab::stability::{hessian_coercivity, orbital_distance, soliton_value, translate_x};

fn main() -> kpi_lab::Result<()> {
    let c = 1.0;
    let grid = Grid::new(512, 4, 32.0 * PI, 1.0)?;
    let bumped = RealField::from_fn(grid, |x, _| soliton_value(c, x) + 0.1 * x * (-x * x).exp())?;
    for shift in [0.0, 1.5, -7.25] {
        let fit = orbital_distance(&translate_x(&bumped, shift), c)?;
        println!("shift {shift:>6}: distance {:.8}, best soliton position {:.6}", fit.distance, fit.best_shift);
    }

    for k in 0..4 {
        let coer = hessian_coercivity(c, k, 256, 16.0 * PI)?;
        println!("B_{c}^{k}: kappa = {:.6}", coer.kappa);
    }
    Ok(())
}
