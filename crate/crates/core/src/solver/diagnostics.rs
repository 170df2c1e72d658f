use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::spectral::{check_constraint, energy_from_parts, energy_norm_sq_spectral, l2_sq, Fft2, RealField, SpectralField};

/// Conserved quantities and norms of one snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub hamiltonian_c: f64,
    pub energy_norm: f64,
    pub linf: f64,
    pub orbital_distance: Option<f64>,
}

/// Diagnostics of a snapshot; `c` is the frame speed entering `E + c M`.
pub fn diagnose(u: &RealField, t: f64, c: f64) -> Result<DiagnosticsRecord> {
    let f = Fft2::new(*u.grid()).forward(u);
    check_constraint(&f)?;
    Ok(diagnose_parts(u, &f, t, c))
}

pub(crate) fn diagnose_parts(u: &RealField, f: &SpectralField, t: f64, c: f64) -> DiagnosticsRecord {
    let mass = l2_sq(u);
    let energy = energy_from_parts(u, f);
    DiagnosticsRecord {
        t,
        mass,
        energy,
        hamiltonian_c: energy + c * mass,
        energy_norm: energy_norm_sq_spectral(f).sqrt(),
        linf: u.linf(),
        orbital_distance: None,
    }
}

pub const CSV_HEADER: [&str; 7] = ["t", "mass", "energy", "hamiltonian_c", "energy_norm", "linf", "orbital_distance"];

/// Writes records as CSV with the fixed column order of [`CSV_HEADER`].
/// A missing orbital distance is an empty cell.
pub fn write_diagnostics_csv<W: Write>(w: W, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| crate::KpError::Io(e.into());
    out.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        let dist = r.orbital_distance.map(|d| d.to_string()).unwrap_or_default();
        out.write_record([
            r.t.to_string(),
            r.mass.to_string(),
            r.energy.to_string(),
            r.hamiltonian_c.to_string(),
            r.energy_norm.to_string(),
            r.linf.to_string(),
            dist,
        ])
        .map_err(io)?;
    }
    out.flush()?;
    Ok(())
}
