//! Distance in the energy space from a field to the translation orbit of `Q_c`.

use num_complex::Complex64;

use super::soliton::{soliton_profile, SolitonParams};
use crate::error::Result;
use crate::spectral::{check_constraint, energy_weight, Fft2, Grid, RealField, SpectralField};

/// Minimum of `||u - Q_c(. - a)||_E` over shifts `a`, and the minimizing
/// shift (the soliton position read off from `u`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalFit {
    pub distance: f64,
    pub best_shift: f64,
}

/// Precomputed pieces of the orbit of `Q_c` on one grid.
pub struct OrbitalMetric {
    grid: Grid,
    soliton_hat: Vec<Complex64>,
    /// `w(xi, 0) conj(Q_hat(xi))` along the `q = 0` row, Nyquist dropped.
    weighted_conj: Vec<Complex64>,
    xi: Vec<f64>,
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

impl OrbitalMetric {
    pub fn new(grid: Grid, c: f64) -> Result<Self> {
        let q = soliton_profile(&SolitonParams::new(c, 0.0)?, &grid)?;
        let mut fft = Fft2::new(grid);
        let qh = fft.forward(&q);
        let nx = grid.nx();
        let mut soliton_hat = qh.coeffs()[..nx].to_vec();
        soliton_hat[nx / 2] = Complex64::new(0.0, 0.0);
        let weighted_conj = (0..nx).map(|i| soliton_hat[i].conj() * energy_weight(&grid, i, 0)).collect();
        let xi = (0..nx).map(|i| if grid.is_nyquist_x(i) { 0.0 } else { grid.xi(i) }).collect();
        Ok(Self { grid, soliton_hat, weighted_conj, xi })
    }

    /// `sum_xi w u_hat conj(Q_hat) e^{i xi a}`, real part; proportional to
    /// the E inner product of `u` with `Q_c(. - a)`.
    fn overlap(&self, row: &[Complex64], a: f64) -> f64 {
        row.iter()
            .zip(&self.weighted_conj)
            .zip(&self.xi)
            .map(|((u, w), &xi)| (u * w * Complex64::cis(xi * a)).re)
            .sum()
    }

    /// First and second derivative of [`Self::overlap`] in `a`.
    fn overlap_derivs(&self, row: &[Complex64], a: f64) -> (f64, f64) {
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for ((u, w), &xi) in row.iter().zip(&self.weighted_conj).zip(&self.xi) {
            let z = u * w * Complex64::cis(xi * a);
            d1 -= xi * z.im;
            d2 -= xi * xi * z.re;
        }
        (d1, d2)
    }

    /// Energy-space distance from `f` to `Q_c(. - a)`, computed directly.
    pub fn distance_at(&self, f: &SpectralField, a: f64) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let mut d = f.at(i, j);
                if j == 0 {
                    d -= self.soliton_hat[i] * Complex64::cis(-self.xi[i] * a);
                }
                acc += energy_weight(g, i, j) * d.norm_sqr();
            }
        }
        (acc / g.area()).sqrt()
    }

    /// Coarse scan over every grid shift, golden-section refinement to
    /// `1e-6 dx`, then a Newton polish of the stationarity condition.
    pub fn fit(&self, f: &SpectralField) -> OrbitalFit {
        let g = &self.grid;
        let nx = g.nx();
        let dx = g.dx();
        let row = &f.coeffs()[..nx];

        // overlap at a_j = j dx for all j at once via an unnormalized inverse FFT
        let mut buf: Vec<Complex64> = row.iter().zip(&self.weighted_conj).map(|(u, w)| u * w).collect();
        buf[nx / 2] = Complex64::new(0.0, 0.0);
        let plan = rustfft::FftPlanner::new().plan_fft_inverse(nx);
        plan.process(&mut buf);
        let (jbest, _) = buf
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (j, z)| if z.re > best.1 { (j, z.re) } else { best });
        let mut center = jbest as f64 * dx;
        if center >= 0.5 * g.length_x() {
            center -= g.length_x();
        }

        let (mut lo, mut hi) = (center - dx, center + dx);
        let mut x1 = hi - GOLDEN * (hi - lo);
        let mut x2 = lo + GOLDEN * (hi - lo);
        let mut f1 = self.overlap(row, x1);
        let mut f2 = self.overlap(row, x2);
        while hi - lo > 1e-6 * dx {
            if f1 > f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - GOLDEN * (hi - lo);
                f1 = self.overlap(row, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + GOLDEN * (hi - lo);
                f2 = self.overlap(row, x2);
            }
        }
        let mut a = 0.5 * (lo + hi);
        let mut best = self.distance_at(f, a);
        for _ in 0..4 {
            let (d1, d2) = self.overlap_derivs(row, a);
            if d2 >= 0.0 {
                break;
            }
            let next = a - d1 / d2;
            if (next - a).abs() > dx {
                break;
            }
            let dist = self.distance_at(f, next);
            if dist > best {
                break;
            }
            a = next;
            best = dist;
        }
        OrbitalFit { distance: best, best_shift: a }
    }
}

/// `inf_a ||u - Q_c(. - a)||_E` with its argmin.
pub fn orbital_distance(u: &RealField, c: f64) -> Result<OrbitalFit> {
    let f = Fft2::new(*u.grid()).forward(u);
    check_constraint(&f)?;
    Ok(OrbitalMetric::new(*u.grid(), c)?.fit(&f))
}

/// Spectral translation `u(. - a)` along x. Drops the Nyquist line.
pub fn translate_x(u: &RealField, a: f64) -> RealField {
    let g = *u.grid();
    let mut fft = Fft2::new(g);
    let f = fft.forward(u).map_modes(|i, j| {
        if g.is_nyquist_x(i) || g.is_nyquist_y(j) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::cis(-g.xi(i) * a)
        }
    });
    fft.inverse_unchecked(&f)
}
