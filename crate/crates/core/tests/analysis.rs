use kpi_lab::analysis::{
    anisotropic_sobolev_check, level_set_measure, parabola_level_measure, resonance, resonance_forms,
    resonance_gradient_q1, run_suite, section_projection_measure, Interval, LevelSetQuery, Phi, ResonanceTriple,
    SectionSet, Suite, Trapezoid,
};
use kpi_lab::spectral::{band_limited_field, counter_rng, FrequencyPair, Grid, RandomFieldSpec};
use kpi_lab::KpError;
use proptest::prelude::*;

fn fp(xi: f64, q: f64) -> FrequencyPair {
    FrequencyPair::new(xi, q)
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn nonzero_int() -> impl Strategy<Value = i64> {
    prop_oneof![-40i64..=-1, 1i64..=40]
}

fn omega(xi: f64, q: f64) -> f64 {
    xi * xi * xi + q * q / xi
}

/// Midpoint-rule measure of `{x in J : phi(x) in I}` with `n` cells.
fn fine_grid_measure(phi: &Phi, i: &Interval, j: &Interval, n: usize) -> f64 {
    let h = j.len() / n as f64;
    (0..n).filter(|&k| i.contains(phi.eval(j.lo + (k as f64 + 0.5) * h))).count() as f64 * h
}

/// Lattice count with integer bookkeeping, padded by one point on each side.
fn brute_lattice(phi: &Phi, i: &Interval, j: &Interval, lambda: i64) -> f64 {
    let l = lambda as f64;
    let lo = (j.lo * l).floor() as i64 - 1;
    let hi = (j.hi * l).ceil() as i64 + 1;
    let count = (lo..=hi).filter(|&k| {
        let x = k as f64 / l;
        j.contains(x) && i.contains(phi.eval(x))
    });
    count.count() as f64 / l
}

fn phi_strategy() -> impl Strategy<Value = Phi> {
    prop_oneof![
        (prop_oneof![-5.0f64..-0.1, 0.1f64..5.0], -5.0f64..5.0).prop_map(|(a, b)| Phi::Affine { a, b }),
        (prop_oneof![-3.0f64..-0.1, 0.1f64..3.0], -5.0f64..5.0, -5.0f64..5.0)
            .prop_map(|(a, b, c)| Phi::Quadratic { a, b, c }),
    ]
}

#[test]
fn integer_frequencies_match_exact_arithmetic() {
    // Omega * xi1 xi2 xi3 = 3 (xi1 xi2 xi3)^2 - (xi1 q2 - xi2 q1)^2, checked in i128
    for (x1, q1, x2, q2) in [(1i128, 0i128, 1i128, 0i128), (3, -7, 5, 2), (-4, 9, 11, -3), (17, 30, -6, 1)] {
        let (x3, q3) = (-(x1 + x2), -(q1 + q2));
        let p = x1 * x2 * x3;
        let sum_scaled: i128 = [(x1, q1), (x2, q2), (x3, q3)].iter().map(|&(x, q)| x * x * x * p + q * q * (p / x)).sum();
        let cross = x1 * q2 - x2 * q1;
        assert_eq!(sum_scaled, 3 * p * p - cross * cross);
        let t = ResonanceTriple::closing(fp(x1 as f64, q1 as f64), fp(x2 as f64, q2 as f64)).unwrap();
        let exact = sum_scaled as f64 / p as f64;
        assert!((resonance(&t) - exact).abs() <= 1e-12 * exact.abs().max(1.0));
    }
}

#[test]
fn off_hyperplane_and_zero_xi_are_rejected() {
    let e = ResonanceTriple::new(fp(1.0, 0.0), fp(1.0, 0.0), fp(-1.0, 0.0)).unwrap_err();
    assert!(matches!(e, KpError::HyperplaneViolation { .. }));
    let e = ResonanceTriple::closing(fp(0.0, 1.0), fp(1.0, 1.0)).unwrap_err();
    assert!(matches!(e, KpError::DomainError(_)));
    assert!(resonance_gradient_q1(1.0, 0.0, 1.0, 0.0).is_err());
}

#[test]
fn lattice_measure_converges_to_lebesgue() {
    let cases = [
        (Phi::Affine { a: 1.7, b: -0.3 }, iv(0.5, 2.5), iv(-1.0, 3.0)),
        (Phi::Quadratic { a: 1.0, b: 0.0, c: -1.0 }, iv(0.25, 3.0), iv(-3.0, 3.0)),
        (Phi::Quadratic { a: -0.5, b: 1.0, c: 2.0 }, iv(0.0, 1.0), iv(-4.0, 6.0)),
    ];
    for (phi, i, j) in cases {
        let exact = phi.preimage_measure(&i, &j);
        for lambda in [1.0, 3.0, 10.0, 37.0, 100.0, 1000.0] {
            let m = phi.lattice_measure(&i, &j, lambda).unwrap();
            assert!((m - exact).abs() <= 2.0 / lambda + 1e-12, "{phi:?} lambda={lambda}: {m} vs {exact}");
        }
    }
}

#[test]
fn section_measure_matches_direct_integration() {
    let set = |q_lattice| SectionSet {
        pieces: vec![
            Trapezoid { xi_lo: 0.0, xi_hi: 1.0, lower: (0.0, 0.5), upper: (1.0, 2.0) },
            Trapezoid { xi_lo: 1.5, xi_hi: 3.0, lower: (-1.0, 0.2), upper: (0.3, 0.4) },
        ],
        q_lattice,
    };
    for q_lattice in [None, Some(1.0), Some(4.0), Some(13.0)] {
        let s = set(q_lattice);
        let n = 600_000;
        let h = 3.0 / n as f64;
        let direct: f64 = (0..n).map(|k| s.section((k as f64 + 0.5) * h)).sum::<f64>() * h;
        assert!((s.measure() - direct).abs() < 1e-4, "{q_lattice:?}: {} vs {direct}", s.measure());
        let m = section_projection_measure(&s, iv(0.0, 3.0), s.max_section()).unwrap();
        assert!(m.holds);
    }
}

#[test]
fn section_sets_must_respect_their_hypotheses() {
    let tall = SectionSet { pieces: vec![Trapezoid { xi_lo: 0.0, xi_hi: 1.0, lower: (0.0, 0.0), upper: (3.0, 3.0) }], q_lattice: None };
    assert!(section_projection_measure(&tall, iv(0.0, 1.0), 2.0).is_err());
    assert!(section_projection_measure(&tall, iv(0.0, 0.5), 3.0).is_err());
    let overlapping = SectionSet {
        pieces: vec![
            Trapezoid { xi_lo: 0.0, xi_hi: 1.0, lower: (0.0, 0.0), upper: (1.0, 1.0) },
            Trapezoid { xi_lo: 0.5, xi_hi: 1.5, lower: (0.0, 0.0), upper: (1.0, 1.0) },
        ],
        q_lattice: None,
    };
    assert!(section_projection_measure(&overlapping, iv(0.0, 2.0), 2.0).is_err());
}

#[test]
fn suites_depend_only_on_their_seed() {
    for suite in Suite::ALL {
        let samples = if suite == Suite::Sobolev { 20 } else { 300 };
        let a = run_suite(suite, samples, 99).unwrap();
        let b = run_suite(suite, samples, 99).unwrap();
        assert_eq!(a.worst_ratio.to_bits(), b.worst_ratio.to_bits(), "{suite}");
        assert_eq!(a.failures, 0, "{suite}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn resonance_forms_agree(x1 in nonzero_int(), x2 in nonzero_int(), q1 in -50i64..50, q2 in -50i64..50,
                              scale in 0.01f64..10.0) {
        prop_assume!(x1 + x2 != 0);
        let (x1, x2, q1, q2) = (x1 as f64 * scale, x2 as f64 * scale, q1 as f64 * scale, q2 as f64 * scale);
        let t = ResonanceTriple::closing(fp(x1, q1), fp(x2, q2)).unwrap();
        let forms = resonance_forms(&t);
        let direct = omega(x1, q1) + omega(x2, q2) + omega(-(x1 + x2), -(q1 + q2));
        prop_assert!((forms.direct - direct).abs() <= 1e-12 * forms.scale);
        prop_assert!(forms.factored_error() < 1e-10);
        prop_assert!(forms.expanded_error() < 1e-10);
        // Omega is symmetric in its three slots
        let swapped = ResonanceTriple::new(t.zeta3, t.zeta1, t.zeta2).unwrap();
        prop_assert!((resonance(&swapped) - forms.direct).abs() <= 1e-12 * forms.scale);
    }

    #[test]
    fn gradient_matches_a_finite_difference(xi in 0.5f64..5.0, q in -5.0f64..5.0, xi1 in 0.1f64..0.4, q1 in -5.0f64..5.0) {
        let f = |q1: f64| omega(xi1, q1) + omega(xi - xi1, q - q1) - omega(xi, q);
        let h = 1e-4;
        let fd = ((f(q1 + h) - f(q1 - h)) / (2.0 * h)).abs();
        let g = resonance_gradient_q1(xi, q, xi1, q1).unwrap();
        prop_assert!((fd - g).abs() < 1e-6 * g.max(1.0), "{fd} vs {g}");
    }

    #[test]
    fn preimage_matches_a_fine_grid(phi in phi_strategy(), lo in -5.0f64..5.0, w in 0.01f64..5.0,
                                     jlo in -4.0f64..0.0, jw in 0.5f64..6.0) {
        let (i, j) = (iv(lo, lo + w), iv(jlo, jlo + jw));
        let n = 200_000;
        // each of at most 5 breakpoints costs one cell
        let tol = 5.0 * j.len() / n as f64;
        prop_assert!((phi.preimage_measure(&i, &j) - fine_grid_measure(&phi, &i, &j, n)).abs() <= tol);
        let pieces = phi.preimage_pieces(&i, &j);
        for piece in &pieces {
            let mid = 0.5 * (piece.lo + piece.hi);
            prop_assert!(i.contains(phi.eval(mid)) && j.contains(mid));
        }
    }

    #[test]
    fn lattice_counts_match_brute_force(phi in phi_strategy(), lo in -5.0f64..5.0, w in 0.01f64..5.0,
                                        jlo in -4.0f64..0.0, jw in 0.5f64..6.0, lambda in 1i64..200) {
        let (i, j) = (iv(lo, lo + w), iv(jlo, jlo + jw));
        let m = phi.lattice_measure(&i, &j, lambda as f64).unwrap();
        prop_assert_eq!(m, brute_lattice(&phi, &i, &j, lambda));
    }

    #[test]
    fn level_set_bounds_hold(phi in phi_strategy(), lo in -5.0f64..5.0, w in 0.01f64..5.0,
                             jlo in -4.0f64..0.0, jw in 0.5f64..6.0, lattice in proptest::option::of(1.0f64..100.0)) {
        let q = LevelSetQuery { phi, j: iv(jlo, jlo + jw), i: iv(lo, lo + w), lattice_lambda: lattice };
        match level_set_measure(&q) {
            Ok(m) => prop_assert!(m.holds, "{q:?} -> {m:?}"),
            Err(e) => prop_assert!(matches!(e, KpError::DegenerateDerivative)),
        }
    }

    #[test]
    fn parabola_bound_holds(a in prop_oneof![-10.0f64..-0.01, 0.01f64..10.0], b in -5.0f64..5.0, c in -5.0f64..5.0,
                            lo in -10.0f64..10.0, w in 0.0f64..10.0, lattice in proptest::option::of(1.0f64..50.0)) {
        let m = parabola_level_measure(a, b, c, iv(lo, lo + w), lattice).unwrap();
        prop_assert!(m.holds, "{m:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn corrected_sobolev_estimate_holds(seed in any::<u64>(), amplitude in 0.01f64..100.0, decay in 0.0f64..3.0) {
        let g = Grid::new(32, 16, 12.0, 1.0).unwrap();
        let spec = RandomFieldSpec { band: 0.3, amplitude, y_dependent: true, decay };
        let u = band_limited_field(g, &spec, &mut counter_rng(seed, 5));
        let check = anisotropic_sobolev_check(&u).unwrap();
        prop_assert!(check.lhs <= check.rhs_corrected, "{check:?}");
        prop_assert!(check.rhs_literal <= check.rhs_corrected);
    }
}
