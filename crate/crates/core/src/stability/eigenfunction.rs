//! The closed-form solution `g_mu(x) = e^{mu x} (mu^3 + 2 mu - 3 mu^2 tanh x)` of
//! `g'''' - 4 (1 - 3 sech^2 x) g'' + 3 nu^2 g = 0`.

/// Half-width of the interval on which the residual is sampled.
pub const EIGENFUNCTION_HALF_WIDTH: f64 = 10.0;
const SAMPLES: usize = 4001;

/// `mu^3 + 2 mu - 3 mu^2`; `g_mu` decays at both ends only where this vanishes.
pub fn characteristic_defect(mu: f64) -> f64 {
    mu * mu * mu + 2.0 * mu - 3.0 * mu * mu
}

/// Speed at which `3 nu^2 = (16 / c^2)(1 - lambda0)` holds: `c = sqrt(16 (1 - lambda0) / (3 nu^2))`.
pub fn threshold_speed(lambda0: f64, nu2: f64) -> f64 {
    (16.0 * (1.0 - lambda0) / (3.0 * nu2)).sqrt()
}

/// `g_mu` and its first four derivatives at `x`.
pub fn eigenfunction_derivatives(mu: f64, x: f64) -> [f64; 5] {
    let a = mu * mu * mu + 2.0 * mu;
    let b = 3.0 * mu * mu;
    let t = x.tanh();
    let s = 1.0 - t * t;
    // h = a - b tanh and its derivatives, using tanh' = sech^2, (sech^2)' = -2 tanh sech^2
    let h = [
        a - b * t,
        -b * s,
        2.0 * b * t * s,
        2.0 * b * s * (s - 2.0 * t * t),
        8.0 * b * t * s * (t * t - 2.0 * s),
    ];
    let e = (mu * x).exp();
    let mut out = [0.0; 5];
    for (n, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for (k, hk) in h.iter().enumerate().take(n + 1) {
            acc += binom * mu.powi((n - k) as i32) * hk;
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        *slot = e * acc;
    }
    out
}

/// Max-norm residual of the ODE on `[-10, 10]`, relative to `max |g_mu|`.
pub fn verify_exact_eigenfunction(mu: f64, nu2: f64) -> f64 {
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..SAMPLES {
        let x = -EIGENFUNCTION_HALF_WIDTH + 2.0 * EIGENFUNCTION_HALF_WIDTH * i as f64 / (SAMPLES - 1) as f64;
        let [g, _, g2, _, g4] = eigenfunction_derivatives(mu, x);
        let sech2 = 1.0 / x.cosh().powi(2);
        let r = g4 - 4.0 * (1.0 - 3.0 * sech2) * g2 + 3.0 * nu2 * g;
        worst = worst.max(r.abs());
        scale = scale.max(g.abs());
    }
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}
