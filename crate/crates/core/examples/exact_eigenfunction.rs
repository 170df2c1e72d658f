//! The closed-form eigenfunction and the threshold speed it predicts.

use kpi_lab::stability::{
    characteristic_defect, critical_speed, min_eigenvalue, predicted_eigenvalue, threshold_speed,
    verify_exact_eigenfunction,
};

fn main() -> kpi_lab::Result<()> {
    for mu in [1.0f64, 2.0, 0.5] {
        let nu2 = (4.0 * mu * mu - mu.powi(4)) / 3.0;
        println!(
            "mu = {mu}: nu^2 = {nu2:.4}, decay defect {:.3}, ODE residual {:.2e}",
            characteristic_defect(mu),
            verify_exact_eigenfunction(mu, nu2)
        );
    }

    // mu = 1 gives nu^2 = 1 and a sech-shaped decaying solution
    let c = 3.0;
    let r = min_eigenvalue(c)?;
    println!("lambda_0(c = {c}) = {:.8} (1 - 3c^2/16 = {:.8})", r.min_eigenvalue, predicted_eigenvalue(c));
    println!("threshold from lambda_0: {:.6}", threshold_speed(0.0, 1.0));
    println!("4 / sqrt(3):             {:.6}", critical_speed());
    Ok(())
}
