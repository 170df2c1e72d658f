//! Resonance identities and the level-set and section measure bounds on small inputs.

use kpi_lab::analysis::{
    level_set_measure, parabola_level_measure, resonance_forms, section_projection_measure, Interval,
    LevelSetQuery, Phi, ResonanceTriple, SectionSet, Trapezoid,
};
use kpi_lab::spectral::FrequencyPair;

fn main() -> kpi_lab::Result<()> {
    let triples = [((1.0, 0.0), (1.0, 0.0)), ((1.0, 1.0), (1.0, -1.0)), ((2.5, -3.0), (-0.7, 4.0))];
    for ((x1, q1), (x2, q2)) in triples {
        let t = ResonanceTriple::closing(FrequencyPair::new(x1, q1), FrequencyPair::new(x2, q2))?;
        let f = resonance_forms(&t);
        println!(
            "Omega{:?} = {:.6}, factored {:.6}, expanded {:.6}",
            [(x1, q1), (x2, q2)],
            f.direct,
            f.factored,
            f.expanded
        );
    }

    let j = Interval::new(0.5, 3.0)?;
    let i = Interval::new(1.0, 2.0)?;
    let phi = Phi::Quadratic { a: 1.0, b: 0.0, c: 0.0 };
    for lattice in [None, Some(1.0), Some(10.0), Some(100.0)] {
        let m = level_set_measure(&LevelSetQuery { phi, j, i, lattice_lambda: lattice })?;
        println!("x^2 in [1, 2], lattice {lattice:?}: measure {:.4} <= {:.4}", m.measured, m.bound);
    }
    let m = parabola_level_measure(-2.0, 1.0, 3.0, Interval::new(0.0, 1.0)?, None)?;
    println!("-2x^2 + x + 3 in [0, 1]: measure {:.4} <= {:.4}", m.measured, m.bound);

    let set = SectionSet {
        pieces: vec![
            Trapezoid { xi_lo: 0.0, xi_hi: 2.0, lower: (0.0, 1.0), upper: (2.0, 2.0) },
            Trapezoid { xi_lo: 2.5, xi_hi: 4.0, lower: (-1.0, -1.0), upper: (0.5, 1.0) },
        ],
        q_lattice: Some(3.0),
    };
    let m = section_projection_measure(&set, Interval::new(0.0, 4.0)?, set.max_section())?;
    println!("section set on (1/3)Z: measure {:.4} <= {:.4}", m.measured, m.bound);
    Ok(())
}
