//! Runs every verification suite at its default sample count and prints the
//! JSON report.

use kpi_lab::analysis::{report_json, run_suite, sobolev_counterexample, Suite};

fn main() -> kpi_lab::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let reports = Suite::ALL
        .into_iter()
        .map(|s| run_suite(s, s.default_samples(), seed))
        .collect::<kpi_lab::Result<Vec<_>>>()?;
    print!("{}", report_json(&reports)?);
    let c = sobolev_counterexample()?;
    println!(
        "y-independent soliton: int u^3 = {:.4}, literal bound = {:.4}, corrected bound = {:.4}",
        c.lhs, c.rhs_literal, c.rhs_corrected
    );
    Ok(())
}
