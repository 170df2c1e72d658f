//! Splits a field into dyadic x-frequency blocks and checks that they add up.

use kpi_lab::spectral::{
    band_limited_field, counter_rng, dyadic_range, forward_transform, lp_projector, p_high, p_low, spectral_l2_sq,
    Grid, RandomFieldSpec, SpectralField,
};

fn main() -> kpi_lab::Result<()> {
    let grid = Grid::new(256, 16, 100.0, 1.0)?;
    let spec = RandomFieldSpec { band: 0.4, decay: 1.0, ..Default::default() };
    let f = forward_transform(&band_limited_field(grid, &spec, &mut counter_rng(4, 0)));

    let (lo, hi) = dyadic_range(&f);
    let mut sum = SpectralField::zeros(grid);
    println!("{:>10} {:>14}", "M", "||P_M u||^2");
    for m in lo..=hi {
        let piece = lp_projector(&f, 2f64.powi(m))?;
        println!("{:>10} {:>14.6e}", format!("2^{m}"), spectral_l2_sq(&piece));
        sum = sum.axpy(1.0, &piece)?;
    }
    let defect = sum.axpy(-1.0, &f)?.max_abs() / f.max_abs();
    println!("relative defect of the sum: {defect:.2e}");

    let (low, high) = (p_low(&f), p_high(&f));
    println!(
        "||P_Low u||^2 = {:.6e}, ||P_High u||^2 = {:.6e}, total {:.6e}",
        spectral_l2_sq(&low),
        spectral_l2_sq(&high),
        spectral_l2_sq(&f)
    );
    Ok(())
}
