//! Samples a line soliton, writes it as a snapshot and reads it back.

use std::f64::consts::PI;

use kpi_lab::solver::stationarity_residual;
use kpi_lab::spectral::{energy, load_snapshot, mass, save_snapshot, Grid};
use kpi_lab::stability::{soliton_profile, SolitonParams};

fn main() -> kpi_lab::Result<()> {
    let c: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1.0);
    let grid = Grid::new(1024, 4, 64.0 * PI, 1.0)?;
    let q = soliton_profile(&SolitonParams::new(c, 0.0)?, &grid)?;

    let path = std::env::temp_dir().join(format!("soliton_c{c}.kpf"));
    save_snapshot(&path, &q, 0.0)?;
    let back = load_snapshot(&path)?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());
    println!("round trip exact: {}", back.field.values() == q.values());

    println!("max       {:.12}", q.max());
    println!("mass      {:.12}", mass(&q));
    println!("energy    {:.12}", energy(&q)?);
    println!("residual  {:.3e}", stationarity_residual(&q, c)?);
    Ok(())
}
