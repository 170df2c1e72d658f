//! Rescaling by lambda = 4 commutes with the flow once time is stretched by lambda^{3/2}.

use kpi_lab::solver::{evolve, rescale, rescaled_time, scaling_norm_ratio, SolverConfig};
use kpi_lab::spectral::{band_limited_field, counter_rng, Grid, RandomFieldSpec};

fn main() -> kpi_lab::Result<()> {
    let grid = Grid::new(64, 16, 10.0 * std::f64::consts::PI, 1.0)?;
    let spec = RandomFieldSpec { amplitude: 2.0, decay: 1.0, ..Default::default() };
    let u0 = band_limited_field(grid, &spec, &mut counter_rng(9, 0));
    let (lam, t, dt) = (4.0, 0.5, 2e-3);

    let evolved_then_scaled = rescale(&evolve(&u0, &SolverConfig { dt, t_end: t, ..Default::default() })?.final_field, lam)?;
    let scaled_cfg = SolverConfig { dt: rescaled_time(dt, lam), t_end: rescaled_time(t, lam), ..Default::default() };
    let scaled_then_evolved = evolve(&rescale(&u0, lam)?, &scaled_cfg)?.final_field;

    let diff = evolved_then_scaled.axpy(-1.0, &scaled_then_evolved)?.linf();
    println!("max |S_lam(u(t)) - u_lam(lam^(3/2) t)| = {diff:.3e}");
    for k in 0..4 {
        let l = 4f64.powi(k);
        println!("lambda = {l:>4}: ||u_lam||_E / (lam^(-1/4) ||u||_E) = {:.6}", scaling_norm_ratio(&u0, l)?);
    }
    Ok(())
}
