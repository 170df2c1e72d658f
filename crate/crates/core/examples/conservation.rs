//! Evolves a random band-limited field and prints the conserved quantities.

use kpi_lab::solver::{evolve, SolverConfig};
use kpi_lab::spectral::{band_limited_field, counter_rng, Grid, RandomFieldSpec};

fn main() -> kpi_lab::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let grid = Grid::new(128, 32, 40.0, 1.0)?;
    let spec = RandomFieldSpec { amplitude: 0.5, decay: 1.0, ..Default::default() };
    let u0 = band_limited_field(grid, &spec, &mut counter_rng(seed, 0));

    let cfg = SolverConfig { dt: 2e-3, t_end: 2.0, record_every: 100, ..Default::default() };
    let run = evolve(&u0, &cfg)?;
    let (m0, e0) = (run.records[0].mass, run.records[0].energy);
    println!("{:>6} {:>14} {:>14} {:>11} {:>11}", "t", "mass", "energy", "dM/M", "dE/|E|");
    for r in &run.records {
        println!(
            "{:>6.2} {:>14.10} {:>14.10} {:>11.2e} {:>11.2e}",
            r.t,
            r.mass,
            r.energy,
            (r.mass - m0) / m0,
            (r.energy - e0) / e0.abs()
        );
    }
    Ok(())
}
