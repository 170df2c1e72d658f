//! Seeded Monte-Carlo suites over the resonance identities, the measure
//! estimates and the anisotropic Sobolev inequality.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use super::measure::{
    level_set_measure, parabola_level_measure, section_projection_measure, Interval, LevelSetQuery, MeasureCheck,
    Phi, SectionSet, Trapezoid,
};
use super::resonance::{resonance, resonance_forms, resonance_gradient_q1, ResonanceTriple};
use super::sobolev::{anisotropic_sobolev_check, SobolevCheck};
use crate::error::{KpError, Result};
use crate::spectral::{band_limited_field, counter_rng, FrequencyPair, Grid, RandomFieldSpec};
use crate::stability::{soliton_profile, SolitonParams};

/// Relative tolerance of the closed forms of the resonance function.
pub const RESONANCE_TOL: f64 = 1e-10;
/// Tolerance of the gradient against a centered difference, with a unit floor.
pub const GRADIENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Resonance,
    Gradient,
    LevelSet,
    Parabola,
    Sections,
    Sobolev,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Resonance, Suite::Gradient, Suite::LevelSet, Suite::Parabola, Suite::Sections, Suite::Sobolev];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Resonance => "resonance",
            Suite::Gradient => "gradient",
            Suite::LevelSet => "level-set",
            Suite::Parabola => "parabola",
            Suite::Sections => "sections",
            Suite::Sobolev => "sobolev",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Resonance => 100_000,
            Suite::LevelSet => 20_000,
            Suite::Gradient | Suite::Parabola => 10_000,
            Suite::Sections | Suite::Sobolev => 1_000,
        }
    }

    /// Stream of the counter-based generator owned by this suite.
    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = KpError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| KpError::InvalidConfig(format!("unknown suite '{s}'")))
    }
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest `error / tolerance` (identities) or `measured / bound` (estimates).
    pub worst_ratio: f64,
    pub seed: u64,
}

#[derive(Default)]
struct Tally {
    samples: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn record(&mut self, ratio: f64, ok: bool) {
        self.samples += 1;
        if !ok || !ratio.is_finite() {
            self.failures += 1;
        }
        if ratio > self.worst || ratio.is_nan() {
            self.worst = ratio;
        }
    }

    fn record_measure(&mut self, m: &MeasureCheck) {
        self.record(m.ratio(), m.holds);
    }

    fn finish(self, suite: Suite, seed: u64) -> SuiteReport {
        SuiteReport { name: suite.name().into(), samples: self.samples, failures: self.failures, worst_ratio: self.worst, seed }
    }
}

/// Uniform in `[lo, hi]` with `|x| >= floor`.
fn away_from_zero<R: Rng>(rng: &mut R, lo: f64, hi: f64, floor: f64) -> f64 {
    loop {
        let x = rng.random_range(lo..hi);
        if x.abs() >= floor {
            return x;
        }
    }
}

fn random_interval<R: Rng>(rng: &mut R, lo: f64, hi: f64, max_len: f64) -> Interval {
    let a = rng.random_range(lo..hi);
    let len = rng.random_range(0.0..max_len);
    Interval { lo: a, hi: a + len }
}

/// Runs `samples` draws of `suite` from `counter_rng(seed, suite)`.
pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = counter_rng(seed, suite.stream());
    let mut tally = Tally::default();
    match suite {
        Suite::Resonance => {
            for _ in 0..samples {
                let triple = loop {
                    let z1 = FrequencyPair::new(away_from_zero(&mut rng, -10.0, 10.0, 0.05), rng.random_range(-10.0..10.0));
                    let z2 = FrequencyPair::new(away_from_zero(&mut rng, -10.0, 10.0, 0.05), rng.random_range(-10.0..10.0));
                    if (z1.xi + z2.xi).abs() >= 0.05 {
                        break ResonanceTriple::closing(z1, z2)?;
                    }
                };
                let f = resonance_forms(&triple);
                let err = f.factored_error().max(f.expanded_error());
                tally.record(err / RESONANCE_TOL, err < RESONANCE_TOL);
            }
        }
        Suite::Gradient => {
            for _ in 0..samples {
                let (xi, xi1) = loop {
                    let xi = rng.random_range(-10.0..10.0);
                    let xi1 = away_from_zero(&mut rng, -10.0, 10.0, 0.05);
                    if (xi - xi1).abs() >= 0.05 && xi.abs() >= 0.05 {
                        break (xi, xi1);
                    }
                };
                let q = rng.random_range(-10.0..10.0);
                let q1 = rng.random_range(-10.0..10.0);
                let g = resonance_gradient_q1(xi, q, xi1, q1)?;
                let omega = |q1: f64| -> Result<f64> {
                    let t = ResonanceTriple::new(
                        FrequencyPair::new(xi1, q1),
                        FrequencyPair::new(xi - xi1, q - q1),
                        FrequencyPair::new(-xi, -q),
                    )?;
                    Ok(resonance(&t))
                };
                let h = 1e-3;
                let fd = ((omega(q1 + h)? - omega(q1 - h)?) / (2.0 * h)).abs();
                let err = (fd - g).abs() / g.max(1.0);
                tally.record(err / GRADIENT_TOL, err < GRADIENT_TOL);
            }
        }
        Suite::LevelSet => {
            for n in 0..samples {
                let j = random_interval(&mut rng, -10.0, 10.0, 10.0);
                let phi = if n % 2 == 0 {
                    Phi::Affine { a: away_from_zero(&mut rng, -5.0, 5.0, 0.05), b: rng.random_range(-5.0..5.0) }
                } else {
                    loop {
                        let phi = Phi::Quadratic {
                            a: away_from_zero(&mut rng, -3.0, 3.0, 0.05),
                            b: rng.random_range(-5.0..5.0),
                            c: rng.random_range(-5.0..5.0),
                        };
                        if phi.min_slope(&j) > 1e-3 {
                            break phi;
                        }
                    }
                };
                let centre = phi.eval(0.5 * (j.lo + j.hi));
                let i = random_interval(&mut rng, centre - 10.0, centre + 10.0, 10.0);
                let lattice_lambda = if (n / 2) % 2 == 0 { None } else { Some(rng.random_range(1.0..8.0)) };
                tally.record_measure(&level_set_measure(&LevelSetQuery { phi, j, i, lattice_lambda })?);
            }
        }
        Suite::Parabola => {
            for n in 0..samples {
                let a = away_from_zero(&mut rng, -5.0, 5.0, 0.05);
                let b = rng.random_range(-5.0..5.0);
                let c = rng.random_range(-5.0..5.0);
                let i = random_interval(&mut rng, -20.0, 20.0, 10.0);
                let lattice_lambda = if n % 2 == 0 { None } else { Some(rng.random_range(1.0..8.0)) };
                tally.record_measure(&parabola_level_measure(a, b, c, i, lattice_lambda)?);
            }
        }
        Suite::Sections => {
            for n in 0..samples {
                let (set, i, c) = random_staircase(&mut rng, n % 2 == 1)?;
                tally.record_measure(&section_projection_measure(&set, i, c)?);
            }
        }
        Suite::Sobolev => {
            let grid = Grid::new(64, 16, 8.0 * PI, 1.0)?;
            let spec = RandomFieldSpec::default();
            for n in 0..samples {
                let mut field_rng = counter_rng(seed ^ 0x5eed_50b0, n as u64);
                let u = band_limited_field(grid, &spec, &mut field_rng);
                let check = anisotropic_sobolev_check(&u)?;
                tally.record(check.ratio, check.ratio <= 1.0);
            }
            // keep the main stream in step with the sample count
            let _: u64 = rng.random();
        }
    }
    Ok(tally.finish(suite, seed))
}

/// Columns of random widths inside `I`, each with a section of measure at
/// most `C`: a Lebesgue segment or a run of lattice points.
fn random_staircase<R: Rng>(rng: &mut R, lattice: bool) -> Result<(SectionSet, Interval, f64)> {
    let i = random_interval(rng, -5.0, 5.0, 5.0);
    let i = Interval { lo: i.lo, hi: i.hi.max(i.lo + 0.1) };
    let c = rng.random_range(0.5..4.0);
    let lambda = if lattice { Some(rng.random_range(1.0f64..6.0).floor()) } else { None };
    let columns = rng.random_range(1..8usize);
    let mut cuts: Vec<f64> = (0..columns - 1).map(|_| rng.random_range(i.lo..i.hi)).collect();
    cuts.push(i.lo);
    cuts.push(i.hi);
    cuts.sort_by(f64::total_cmp);
    let mut pieces = Vec::with_capacity(columns);
    for w in cuts.windows(2) {
        if w[1] == w[0] || rng.random_bool(0.2) {
            continue;
        }
        let base = rng.random_range(-3.0..3.0);
        let height = match lambda {
            // k lattice points span (k - 1)/lambda and weigh k/lambda <= C
            Some(l) => {
                let k = rng.random_range(0..=(c * l).floor() as usize);
                let base = (base * l).round() / l;
                pieces.push(Trapezoid { xi_lo: w[0], xi_hi: w[1], lower: (base, base), upper: (base, base) });
                if k == 0 {
                    pieces.pop();
                    continue;
                }
                (k - 1) as f64 / l
            }
            None => rng.random_range(0.0..c),
        };
        if lambda.is_some() {
            let p = pieces.last_mut().expect("pushed above");
            p.upper = (p.lower.0 + height, p.lower.1 + height);
        } else {
            pieces.push(Trapezoid { xi_lo: w[0], xi_hi: w[1], lower: (base, base), upper: (base + height, base + height) });
        }
    }
    Ok((SectionSet { pieces, q_lattice: lambda }, i, c))
}

/// The y-independent soliton `Q_1` on a `2 pi`-periodic strip: the literal
/// estimate fails there (its right side vanishes) while the corrected one holds.
pub fn sobolev_counterexample() -> Result<SobolevCheck> {
    let grid = Grid::new(1024, 4, 64.0 * PI, 1.0)?;
    let q = soliton_profile(&SolitonParams::new(1.0, 0.0)?, &grid)?;
    anisotropic_sobolev_check(&q)
}

/// Report serialized as pretty JSON with a trailing newline.
pub fn report_json(reports: &[SuiteReport]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(reports).map_err(|e| KpError::Format(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
