//! The resonance function `Omega = omega(z1) + omega(z2) + omega(z3)` on the
//! hyperplane `z1 + z2 + z3 = 0`, and its closed forms.

use crate::error::{KpError, Result};
use crate::spectral::{dispersion_symbol, FrequencyPair};

/// Absolute tolerance on `|sum xi| + |sum q|`, scaled by the frequency size.
pub const HYPERPLANE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceTriple {
    pub zeta1: FrequencyPair,
    pub zeta2: FrequencyPair,
    pub zeta3: FrequencyPair,
}

impl ResonanceTriple {
    pub fn new(zeta1: FrequencyPair, zeta2: FrequencyPair, zeta3: FrequencyPair) -> Result<Self> {
        let t = Self { zeta1, zeta2, zeta3 };
        t.validate()?;
        Ok(t)
    }

    /// The triple `(z1, z2, -(z1 + z2))`.
    pub fn closing(zeta1: FrequencyPair, zeta2: FrequencyPair) -> Result<Self> {
        Self::new(zeta1, zeta2, -(zeta1 + zeta2))
    }

    fn validate(&self) -> Result<()> {
        let zs = self.pairs();
        let defect = zs.iter().map(|z| z.xi).sum::<f64>().abs() + zs.iter().map(|z| z.q).sum::<f64>().abs();
        let scale = zs.iter().map(|z| z.xi.abs() + z.q.abs()).fold(1.0, f64::max);
        if defect.is_nan() || defect > HYPERPLANE_TOL * scale {
            return Err(KpError::HyperplaneViolation { defect });
        }
        if zs.iter().any(|z| z.xi == 0.0) {
            return Err(KpError::DomainError("resonance needs nonzero xi in every slot".into()));
        }
        Ok(())
    }

    pub fn pairs(&self) -> [FrequencyPair; 3] {
        [self.zeta1, self.zeta2, self.zeta3]
    }
}

/// The three ways of writing `Omega`, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceForms {
    /// `omega1 + omega2 + omega3`, the definition.
    pub direct: f64,
    /// `-(xi1 xi2 / (xi1 + xi2)) (3 (xi1 + xi2)^2 - (q1/xi1 - q2/xi2)^2)`.
    pub factored: f64,
    /// `-3 xi1 xi2 xi3 + (xi1 q2 - xi2 q1)^2 / (xi1 xi2 xi3)`; equals `-Omega`.
    pub expanded: f64,
    /// `|omega1| + |omega2| + |omega3|`, the scale for relative comparisons.
    pub scale: f64,
}

impl ResonanceForms {
    pub fn factored_error(&self) -> f64 {
        relative(self.direct, self.factored, self.scale)
    }

    /// Mismatch between the expanded form and `-Omega`.
    pub fn expanded_error(&self) -> f64 {
        relative(-self.direct, self.expanded, self.scale)
    }
}

fn relative(a: f64, b: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        (a - b).abs()
    } else {
        (a - b).abs() / scale
    }
}

/// `Omega(z1, z2, z3)` as the direct sum of dispersion symbols.
pub fn resonance(t: &ResonanceTriple) -> f64 {
    t.pairs().iter().map(|&z| dispersion_symbol(z)).sum()
}

pub fn resonance_forms(t: &ResonanceTriple) -> ResonanceForms {
    let [z1, z2, z3] = t.pairs();
    let omegas = t.pairs().map(dispersion_symbol);
    let s = z1.xi + z2.xi;
    let m = z1.q / z1.xi - z2.q / z2.xi;
    let factored = -(z1.xi * z2.xi / s) * (3.0 * s * s - m * m);
    let p = z1.xi * z2.xi * z3.xi;
    let cross = z1.xi * z2.q - z2.xi * z1.q;
    let expanded = -3.0 * p + cross * cross / p;
    ResonanceForms {
        direct: omegas.iter().sum(),
        factored,
        expanded,
        scale: omegas.iter().map(|w| w.abs()).sum(),
    }
}

/// `|d Omega(z1, z - z1, -z) / d q1| = 2 |q1/xi1 - (q - q1)/(xi - xi1)|`.
pub fn resonance_gradient_q1(xi: f64, q: f64, xi1: f64, q1: f64) -> Result<f64> {
    if xi1 == 0.0 || xi - xi1 == 0.0 {
        return Err(KpError::DomainError(format!("gradient undefined at xi = {xi}, xi1 = {xi1}")));
    }
    Ok(2.0 * (q1 / xi1 - (q - q1) / (xi - xi1)).abs())
}
