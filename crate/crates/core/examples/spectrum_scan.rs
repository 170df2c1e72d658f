//! Lowest eigenvalue of the linearized operator across speeds, and the
//! bisection for the speed where it changes sign.

use kpi_lab::stability::{critical_speed, critical_speed_scan_with, min_eigenvalue, predicted_eigenvalue, SpectrumSettings};

fn main() -> kpi_lab::Result<()> {
    for c in [0.5, 1.0, 2.0, 2.4, 2.8, 3.0, 3.2] {
        let r = min_eigenvalue(c)?;
        println!(
            "c = {c:4.2}  lambda0 = {:+.6}  (1 - 3c^2/16 = {:+.6})  err {:.1e}  below one: {}",
            r.min_eigenvalue,
            predicted_eigenvalue(c),
            r.error_estimate,
            r.eigenvalues_below_one.len()
        );
    }
    let scan = critical_speed_scan_with(2.0, 2.6, 12, &SpectrumSettings::default())?;
    println!(
        "crossing at c = {:.6} in [{:.6}, {:.6}], 4/sqrt(3) = {:.6}",
        scan.critical_speed,
        scan.bracket.0,
        scan.bracket.1,
        critical_speed()
    );
    Ok(())
}
