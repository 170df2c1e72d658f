//! Seeded band-limited random fields.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{RealField, SpectralField};
use super::grid::Grid;
use super::transform::Fft2;

/// ChaCha stream `stream` of the generator keyed by `seed`. Distinct streams
/// are independent, so samples can be drawn in any order or in parallel.
pub fn counter_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Parameters of a random band-limited field.
#[derive(Debug, Clone, Copy)]
pub struct RandomFieldSpec {
    /// Keep modes with `|index| <= band * n` on each axis.
    pub band: f64,
    /// Target `max |u|`.
    pub amplitude: f64,
    /// When false only `q = 0` modes are populated.
    pub y_dependent: bool,
    /// Coefficients are scaled by `(1 + kx^2 + ky^2)^{-decay/2}`.
    pub decay: f64,
}

impl Default for RandomFieldSpec {
    fn default() -> Self {
        Self { band: 0.25, amplitude: 1.0, y_dependent: true, decay: 0.0 }
    }
}

/// Random real field with no `xi = 0` content (so every x-line has zero
/// mean), no Nyquist content, and modes limited to the requested band.
pub fn band_limited_field<R: Rng + ?Sized>(grid: Grid, spec: &RandomFieldSpec, rng: &mut R) -> RealField {
    let kx_max = ((grid.nx() as f64 * spec.band).floor() as i64).max(1);
    let ky_max = if spec.y_dependent { (grid.ny() as f64 * spec.band).floor() as i64 } else { 0 };
    let mut f = SpectralField::zeros(grid);
    let c = f.coeffs_mut();
    for j in 0..grid.ny() {
        let ky = grid.mode_y(j);
        if ky.abs() > ky_max || grid.is_nyquist_y(j) {
            continue;
        }
        for i in 1..grid.nx() / 2 {
            let kx = grid.mode_x(i);
            if kx > kx_max {
                continue;
            }
            let scale = (1.0 + (kx * kx + ky * ky) as f64).powf(-0.5 * spec.decay);
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
            c[grid.index(i, j)] = z;
            c[grid.index(grid.mirror_x(i), grid.mirror_y(j))] = z.conj();
        }
    }
    let u = Fft2::new(grid).inverse_unchecked(&f);
    let peak = u.linf();
    if peak == 0.0 {
        return u;
    }
    u.scaled(spec.amplitude / peak)
}
