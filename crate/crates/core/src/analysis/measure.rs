//! Measures of level sets `{x in J : phi(x) in I}` for affine and quadratic
//! `phi`, on the line and on the lattice `lambda^{-1} Z`, and of planar sets
//! through their sections.

use serde::Serialize;

use crate::error::{KpError, Result};
use crate::spectral::bracket;

/// Slack constant for the estimates stated up to an implicit constant.
pub const CALIBRATION_CONSTANT: f64 = 4.0;

/// Absolute slack for floating-point comparisons against a bound.
pub const MEASURE_SLACK: f64 = 1e-12;

/// Lattice enumeration refuses to visit more points than this.
const MAX_LATTICE_POINTS: f64 = 1e7;

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(KpError::DomainError(format!("[{lo}, {hi}] is not an interval")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `a x + b` or `a x^2 + b x + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phi {
    Affine { a: f64, b: f64 },
    Quadratic { a: f64, b: f64, c: f64 },
}

impl Phi {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Phi::Affine { a, b } => a * x + b,
            Phi::Quadratic { a, b, c } => (a * x + b) * x + c,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            Phi::Affine { a, .. } => a,
            Phi::Quadratic { a, b, .. } => 2.0 * a * x + b,
        }
    }

    /// `inf_{x in J} |phi'(x)|`.
    pub fn min_slope(&self, j: &Interval) -> f64 {
        match *self {
            Phi::Affine { a, .. } => a.abs(),
            Phi::Quadratic { a, b, .. } => {
                if a != 0.0 && j.contains(-b / (2.0 * a)) {
                    0.0
                } else {
                    self.derivative(j.lo).abs().min(self.derivative(j.hi).abs())
                }
            }
        }
    }

    /// Real solutions of `phi(x) = v`.
    fn solve(&self, v: f64) -> Vec<f64> {
        match *self {
            Phi::Affine { a, b } if a != 0.0 => vec![(v - b) / a],
            Phi::Affine { .. } => vec![],
            Phi::Quadratic { a: 0.0, b, c } => Phi::Affine { a: b, b: c }.solve(v),
            Phi::Quadratic { a, b, c } => {
                let c = c - v;
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    return vec![];
                }
                // stable pair of roots
                let s = -0.5 * (b + b.signum() * disc.sqrt());
                if s == 0.0 {
                    return vec![0.0];
                }
                vec![s / a, c / s]
            }
        }
    }

    /// Lebesgue measure of `{x in J : phi(x) in I}`. Between consecutive
    /// breakpoints (roots of `phi = I.lo`, `phi = I.hi`, the vertex and the
    /// ends of `J`) membership is constant, so a midpoint test is exact.
    pub fn preimage_measure(&self, i: &Interval, j: &Interval) -> f64 {
        self.preimage_pieces(i, j).iter().map(Interval::len).sum()
    }

    /// `{x in J : phi(x) in I}` as disjoint closed intervals (ascending).
    pub fn preimage_pieces(&self, i: &Interval, j: &Interval) -> Vec<Interval> {
        let mut cuts = vec![j.lo, j.hi];
        for v in [i.lo, i.hi] {
            cuts.extend(self.solve(v).into_iter().filter(|x| j.contains(*x)));
        }
        if let Phi::Quadratic { a, b, .. } = *self {
            if a != 0.0 && j.contains(-b / (2.0 * a)) {
                cuts.push(-b / (2.0 * a));
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut pieces: Vec<Interval> = Vec::new();
        for w in cuts.windows(2) {
            if !i.contains(self.eval(0.5 * (w[0] + w[1]))) {
                continue;
            }
            match pieces.last_mut() {
                Some(last) if last.hi == w[0] => last.hi = w[1],
                _ => pieces.push(Interval { lo: w[0], hi: w[1] }),
            }
        }
        pieces
    }

    /// `lambda^{-1} #{x in J cap lambda^{-1} Z : phi(x) in I}` by enumeration.
    pub fn lattice_measure(&self, i: &Interval, j: &Interval, lambda: f64) -> Result<f64> {
        let lo = (j.lo * lambda).ceil();
        let hi = (j.hi * lambda).floor();
        if hi - lo > MAX_LATTICE_POINTS {
            return Err(KpError::DomainError(format!("{} lattice points exceed the enumeration cap", hi - lo)));
        }
        let mut count = 0u64;
        let mut k = lo;
        while k <= hi {
            if i.contains(self.eval(k / lambda)) {
                count += 1;
            }
            k += 1.0;
        }
        Ok(count as f64 / lambda)
    }
}

/// One level-set estimate to check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSetQuery {
    pub phi: Phi,
    pub j: Interval,
    pub i: Interval,
    /// When set, `x` ranges over `J cap lambda^{-1} Z` with weight `1/lambda`.
    pub lattice_lambda: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureCheck {
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
}

impl MeasureCheck {
    fn new(measured: f64, bound: f64) -> Self {
        Self { measured, bound, holds: measured <= bound + MEASURE_SLACK }
    }

    /// `measured / bound`, 0 for an empty set.
    pub fn ratio(&self) -> f64 {
        if self.measured == 0.0 {
            0.0
        } else {
            self.measured / self.bound
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 1.0) {
        return Err(KpError::DomainError(format!("lattice scale {lambda} must be >= 1")));
    }
    Ok(())
}

/// `|{x in J : phi(x) in I}| <= |I| / inf_J |phi'|` on the line (constant 1)
/// and `<= C <|I| / inf_J |phi'|>` on the lattice.
pub fn level_set_measure(qr: &LevelSetQuery) -> Result<MeasureCheck> {
    let slope = qr.phi.min_slope(&qr.j);
    if slope == 0.0 {
        return Err(KpError::DegenerateDerivative);
    }
    let r = qr.i.len() / slope;
    match qr.lattice_lambda {
        None => Ok(MeasureCheck::new(qr.phi.preimage_measure(&qr.i, &qr.j), r)),
        Some(lambda) => {
            check_lambda(lambda)?;
            let m = qr.phi.lattice_measure(&qr.i, &qr.j, lambda)?;
            Ok(MeasureCheck::new(m, CALIBRATION_CONSTANT * bracket(r)))
        }
    }
}

/// `|{x : a x^2 + b x + c in I}| <= C (|I| / |a|)^{1/2}`, with `C <.>` on the lattice.
pub fn parabola_level_measure(a: f64, b: f64, c: f64, i: Interval, lattice_lambda: Option<f64>) -> Result<MeasureCheck> {
    if a == 0.0 || !a.is_finite() {
        return Err(KpError::DomainError("parabola needs a != 0".into()));
    }
    let phi = Phi::Quadratic { a, b, c };
    let vertex = -b / (2.0 * a);
    let peak = phi.eval(vertex);
    // every x with phi(x) in I satisfies a (x - vertex)^2 = phi(x) - peak
    let reach = ((i.lo - peak).abs().max((i.hi - peak).abs()) / a.abs()).sqrt() + 1.0;
    let j = Interval::new(vertex - reach, vertex + reach)?;
    let r = (i.len() / a.abs()).sqrt();
    match lattice_lambda {
        None => Ok(MeasureCheck::new(phi.preimage_measure(&i, &j), CALIBRATION_CONSTANT * r)),
        Some(lambda) => {
            check_lambda(lambda)?;
            Ok(MeasureCheck::new(phi.lattice_measure(&i, &j, lambda)?, CALIBRATION_CONSTANT * bracket(r)))
        }
    }
}

/// Planar piece `{(xi, q) : xi in [xi_lo, xi_hi], lower(xi) <= q <= upper(xi)}`
/// with `lower` and `upper` affine in `xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    pub xi_lo: f64,
    pub xi_hi: f64,
    /// `(value at xi_lo, value at xi_hi)`.
    pub lower: (f64, f64),
    pub upper: (f64, f64),
}

impl Trapezoid {
    fn at(&self, edge: (f64, f64), xi: f64) -> f64 {
        let w = self.xi_hi - self.xi_lo;
        if w == 0.0 {
            return edge.0;
        }
        let s = (xi - self.xi_lo) / w;
        edge.0 + s * (edge.1 - edge.0)
    }

    pub fn lower_at(&self, xi: f64) -> f64 {
        self.at(self.lower, xi)
    }

    pub fn upper_at(&self, xi: f64) -> f64 {
        self.at(self.upper, xi)
    }
}

/// Union of trapezoids with disjoint `xi` ranges; `q` sections are measured
/// with Lebesgue measure or with the counting measure of `lambda^{-1} Z`
/// weighted by `1/lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionSet {
    pub pieces: Vec<Trapezoid>,
    pub q_lattice: Option<f64>,
}

impl SectionSet {
    /// Measure of the `q` section at `xi`.
    pub fn section(&self, xi: f64) -> f64 {
        self.pieces
            .iter()
            .filter(|p| p.xi_lo <= xi && xi <= p.xi_hi)
            .map(|p| self.segment_measure(p.lower_at(xi), p.upper_at(xi)))
            .sum()
    }

    fn segment_measure(&self, lo: f64, hi: f64) -> f64 {
        if hi < lo {
            return 0.0;
        }
        match self.q_lattice {
            None => hi - lo,
            Some(l) => (((hi * l).floor() - (lo * l).ceil()) + 1.0).max(0.0) / l,
        }
    }

    /// Subintervals of a piece on which the section measure is constant
    /// (lattice) or affine (Lebesgue). On the lattice the count changes only
    /// where an edge crosses `lambda^{-1} Z`.
    fn cells(&self, p: &Trapezoid) -> Vec<(f64, f64)> {
        let w = p.xi_hi - p.xi_lo;
        let mut cuts = vec![p.xi_lo, p.xi_hi];
        if let Some(l) = self.q_lattice {
            for edge in [p.lower, p.upper] {
                let (a, b) = (edge.0 * l, edge.1 * l);
                if a == b || w == 0.0 {
                    continue;
                }
                let (lo, hi) = (a.min(b).ceil() as i64, a.max(b).floor() as i64);
                for k in lo..=hi {
                    cuts.push(p.xi_lo + (k as f64 - a) / (b - a) * w);
                }
            }
        } else {
            // where the edges cross, the section switches from empty to nonempty
            let (d0, d1) = (p.upper.0 - p.lower.0, p.upper.1 - p.lower.1);
            if d0 * d1 < 0.0 {
                cuts.push(p.xi_lo + d0 / (d0 - d1) * w);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.windows(2).map(|c| (c[0], c[1])).collect()
    }

    fn piece_section(&self, p: &Trapezoid, xi: f64) -> f64 {
        self.segment_measure(p.lower_at(xi), p.upper_at(xi))
    }

    /// Exact integral of the section measure over one piece.
    fn piece_measure(&self, p: &Trapezoid) -> f64 {
        self.cells(p)
            .into_iter()
            .map(|(a, b)| match self.q_lattice {
                Some(_) => (b - a) * self.piece_section(p, 0.5 * (a + b)),
                None => 0.5 * (b - a) * (self.piece_section(p, a) + self.piece_section(p, b)),
            })
            .sum()
    }

    /// Area of the set in the product of `d xi` and the `q` measure.
    pub fn measure(&self) -> f64 {
        self.pieces.iter().map(|p| self.piece_measure(p)).sum()
    }

    /// Largest section measure up to null sets of `xi`.
    pub fn max_section(&self) -> f64 {
        let mut best: f64 = 0.0;
        for p in &self.pieces {
            for (a, b) in self.cells(p) {
                let m = match self.q_lattice {
                    Some(_) => self.piece_section(p, 0.5 * (a + b)),
                    None => self.piece_section(p, a).max(self.piece_section(p, b)),
                };
                best = best.max(m);
            }
        }
        best
    }
}

/// `|Lambda| <= C |I|` for a set whose `xi` projection lies in `I` and whose
/// `q` sections have measure at most `C`.
pub fn section_projection_measure(set: &SectionSet, i: Interval, c_sections: f64) -> Result<MeasureCheck> {
    if let Some(l) = set.q_lattice {
        check_lambda(l)?;
    }
    let mut ranges: Vec<(f64, f64)> = set.pieces.iter().map(|p| (p.xi_lo, p.xi_hi)).collect();
    ranges.sort_by(|a, b| a.0.total_cmp(&b.0));
    if ranges.iter().any(|r| !(r.0 <= r.1 && i.contains(r.0) && i.contains(r.1))) {
        return Err(KpError::DomainError("set projection leaves I".into()));
    }
    if ranges.windows(2).any(|w| w[1].0 < w[0].1) {
        return Err(KpError::DomainError("pieces overlap in xi".into()));
    }
    let widest = set.max_section();
    if widest > c_sections + MEASURE_SLACK {
        return Err(KpError::DomainError(format!("a section has measure {widest} > {c_sections}")));
    }
    Ok(MeasureCheck::new(set.measure(), c_sections * i.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn affine_saturates() {
        let q = LevelSetQuery { phi: Phi::Affine { a: 2.0, b: 0.0 }, j: iv(0.0, 1.0), i: iv(0.0, 1.0), lattice_lambda: None };
        let m = level_set_measure(&q).unwrap();
        assert_eq!((m.measured, m.bound, m.holds), (0.5, 0.5, true));
    }

    #[test]
    fn lattice_example() {
        let q = LevelSetQuery { phi: Phi::Affine { a: 1.0, b: 0.0 }, j: iv(0.0, 10.0), i: iv(3.0, 4.0), lattice_lambda: Some(2.0) };
        let m = level_set_measure(&q).unwrap();
        assert_eq!(m.measured, 1.5);
        assert_eq!(m.bound, 4.0 * 2f64.sqrt());
        assert!(m.holds);
    }

    #[test]
    fn vertex_inside_is_degenerate() {
        let q = LevelSetQuery {
            phi: Phi::Quadratic { a: 1.0, b: 0.0, c: 0.0 },
            j: iv(-1.0, 1.0),
            i: iv(0.0, 1.0),
            lattice_lambda: None,
        };
        assert!(matches!(level_set_measure(&q), Err(KpError::DegenerateDerivative)));
        let q = LevelSetQuery { phi: Phi::Affine { a: 0.0, b: 1.0 }, ..q };
        assert!(matches!(level_set_measure(&q), Err(KpError::DegenerateDerivative)));
    }

    #[test]
    fn parabola_examples() {
        let m = parabola_level_measure(1.0, 0.0, 0.0, iv(0.0, 1.0), None).unwrap();
        assert!((m.measured - 2.0).abs() < 1e-15 && m.bound == 4.0);
        let m = parabola_level_measure(1.0, 0.0, 0.0, iv(1.0, 4.0), None).unwrap();
        assert!((m.measured - 2.0).abs() < 1e-15);
        assert!((m.bound - 4.0 * 3f64.sqrt()).abs() < 1e-15);
        // lattice: x in Z with x^2 in [1, 4] is {-2, -1, 1, 2}
        assert_eq!(parabola_level_measure(1.0, 0.0, 0.0, iv(1.0, 4.0), Some(1.0)).unwrap().measured, 4.0);
        assert!(parabola_level_measure(0.0, 1.0, 0.0, iv(0.0, 1.0), None).is_err());
    }

    #[test]
    fn preimage_of_a_downward_parabola() {
        // -x^2 in [-4, -1] on [-3, 3]: |x| in [1, 2]
        let phi = Phi::Quadratic { a: -1.0, b: 0.0, c: 0.0 };
        let pieces = phi.preimage_pieces(&iv(-4.0, -1.0), &iv(-3.0, 3.0));
        assert_eq!(pieces, vec![iv(-2.0, -1.0), iv(1.0, 2.0)]);
    }

    #[test]
    fn sections() {
        let rect = SectionSet {
            pieces: vec![Trapezoid { xi_lo: 0.0, xi_hi: 3.0, lower: (0.0, 0.0), upper: (1.0, 1.0) }],
            q_lattice: Some(1.0),
        };
        let m = section_projection_measure(&rect, iv(0.0, 3.0), 2.0).unwrap();
        assert_eq!((m.measured, m.bound), (6.0, 6.0));
        let tri = SectionSet {
            pieces: vec![Trapezoid { xi_lo: 0.0, xi_hi: 2.0, lower: (0.0, 0.0), upper: (0.0, 5.0) }],
            q_lattice: None,
        };
        let m = section_projection_measure(&tri, iv(0.0, 2.0), 5.0).unwrap();
        assert_eq!((m.measured, m.bound), (5.0, 10.0));
        assert!(section_projection_measure(&tri, iv(0.0, 2.0), 4.0).is_err());
        assert!(section_projection_measure(&tri, iv(0.5, 2.0), 5.0).is_err());
    }

    #[test]
    fn lattice_sections_of_a_triangle() {
        // q in Z cap [0, xi] for xi in [0, 3]: count floor(xi) + 1
        let tri = SectionSet {
            pieces: vec![Trapezoid { xi_lo: 0.0, xi_hi: 3.0, lower: (0.0, 0.0), upper: (0.0, 3.0) }],
            q_lattice: Some(1.0),
        };
        assert!((tri.measure() - (1.0 + 2.0 + 3.0)).abs() < 1e-14);
    }
}
