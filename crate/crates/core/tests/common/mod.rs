//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use rustfft::FftPlanner;

/// `(phi-coefficient numerators) / z^3` by power series when `|z| < 1`,
/// closed form otherwise. Returns `(q, f1, f2, f3)` without the factor `h`.
fn etd_weights(z: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
    if z.norm() >= 1.0 {
        let e = z.exp();
        let z2 = z * z;
        let z3 = z2 * z;
        return (
            ((z * 0.5).exp() - 1.0) / z,
            (-4.0 - z + e * (4.0 - 3.0 * z + z2)) / z3,
            (2.0 + z + e * (z - 2.0)) / z3,
            (-4.0 - 3.0 * z - z2 + e * (4.0 - z)) / z3,
        );
    }
    // 1/m! for m = 0..40
    let mut inv_fact = [1.0f64; 41];
    for m in 1..41 {
        inv_fact[m] = inv_fact[m - 1] / m as f64;
    }
    let mut q = Complex64::new(0.0, 0.0);
    let (mut f1, mut f2, mut f3) = (q, q, q);
    let mut zp = Complex64::new(1.0, 0.0);
    for k in 0..35 {
        // (e^{z/2} - 1)/z = sum z^k / (2^{k+1} (k+1)!)
        q += zp * inv_fact[k + 1] / 2f64.powi(k as i32 + 1);
        let m = k + 3;
        f1 += zp * (4.0 * inv_fact[m] - 3.0 * inv_fact[m - 1] + inv_fact[m - 2]);
        f2 += zp * (inv_fact[m - 1] - 2.0 * inv_fact[m]);
        f3 += zp * (4.0 * inv_fact[m] - inv_fact[m - 1]);
        zp *= z;
    }
    (q, f1, f2, f3)
}

/// Integrates `u_t - c u_x + u_xxx + u u_x = 0` on a periodic interval of length
/// `length` from samples `u0`, with `steps` ETDRK4 steps of size `h`, the 2/3
/// rule and the Nyquist mode removed.
pub fn kdv_reference(u0: &[f64], length: f64, h: f64, steps: usize, frame_speed: f64) -> Vec<f64> {
    let n = u0.len();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let signed = |i: usize| if i <= n / 2 { i as i64 } else { i as i64 - n as i64 };
    let xi: Vec<f64> = (0..n)
        .map(|i| if i == n / 2 { 0.0 } else { 2.0 * std::f64::consts::PI * signed(i) as f64 / length })
        .collect();
    let keep: Vec<bool> = (0..n).map(|i| i != n / 2 && 3 * signed(i).unsigned_abs() as usize <= n).collect();
    let weights: Vec<_> = xi
        .iter()
        .map(|&k| {
            // co-moving frame: u_t = c u_x - u_xxx - u u_x, so L = i (k^3 + c k)
            let z = Complex64::new(0.0, h * (k * k * k + frame_speed * k));
            let (q, f1, f2, f3) = etd_weights(z);
            (z.exp(), (z * 0.5).exp(), q * h, f1 * h, f2 * h, f3 * h)
        })
        .collect();

    let nonlinear = |v: &[Complex64]| -> Vec<Complex64> {
        let mut p: Vec<Complex64> = v.iter().zip(&keep).map(|(&x, &k)| if k { x } else { Complex64::new(0.0, 0.0) }).collect();
        inv.process(&mut p);
        for z in p.iter_mut() {
            let u = z.re / n as f64;
            *z = Complex64::new(u * u, 0.0);
        }
        fwd.process(&mut p);
        p.iter()
            .zip(&xi)
            .zip(&keep)
            .map(|((z, &k), &m)| if m { Complex64::new(0.0, -0.5 * k) * z } else { Complex64::new(0.0, 0.0) })
            .collect()
    };

    let mut v: Vec<Complex64> = u0.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fwd.process(&mut v);
    v[0] = Complex64::new(0.0, 0.0);
    v[n / 2] = Complex64::new(0.0, 0.0);
    for _ in 0..steps {
        let nv = nonlinear(&v);
        let a: Vec<_> = (0..n).map(|k| weights[k].1 * v[k] + weights[k].2 * nv[k]).collect();
        let na = nonlinear(&a);
        let b: Vec<_> = (0..n).map(|k| weights[k].1 * v[k] + weights[k].2 * na[k]).collect();
        let nb = nonlinear(&b);
        let c: Vec<_> = (0..n).map(|k| weights[k].1 * a[k] + weights[k].2 * (2.0 * nb[k] - nv[k])).collect();
        let nc = nonlinear(&c);
        for k in 0..n {
            let w = &weights[k];
            v[k] = w.0 * v[k] + w.3 * nv[k] + 2.0 * w.4 * (na[k] + nb[k]) + w.5 * nc[k];
        }
        v[0] = Complex64::new(0.0, 0.0);
        v[n / 2] = Complex64::new(0.0, 0.0);
    }
    inv.process(&mut v);
    v.iter().map(|z| z.re / n as f64).collect()
}

/// Composite Simpson rule for `f` on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
