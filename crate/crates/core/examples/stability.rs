//! Perturbed line solitons below and above the critical speed.

use std::f64::consts::PI;

use kpi_lab::solver::SolverConfig;
use kpi_lab::spectral::{FrequencyPair, Grid};
use kpi_lab::stability::{run_stability_experiment, StabilityRunConfig};

fn main() -> kpi_lab::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let speeds = if args.is_empty() { vec![1.0, 3.0] } else { args };
    let length = 32.0 * PI;
    let grid = Grid::new(512, 16, length, 1.0)?;
    for c in speeds {
        for delta in [1e-2, 5e-3] {
            let cfg = StabilityRunConfig {
                c,
                delta,
                perturbation_mode: FrequencyPair::new(2.0 * PI / length, 1.0),
                t_end: 20.0,
                solver: SolverConfig { dt: 5e-3, record_every: 200, ..Default::default() },
                grid,
            };
            let run = run_stability_experiment(&cfg)?;
            let trace: Vec<String> = run
                .records
                .iter()
                .map(|r| format!("{:.1}:{:.2e}", r.t, r.orbital_distance.unwrap_or(f64::NAN)))
                .collect();
            println!(
                "c = {c}, delta = {delta:.0e}: sup distance {:.3e} ({:.2} delta), unstable = {}",
                run.sup_distance,
                run.sup_distance / delta,
                run.unstable
            );
            println!("  {}", trace.join(" "));
        }
    }
    Ok(())
}
