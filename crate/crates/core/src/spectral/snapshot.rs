//! `KPF1` binary field snapshots.
//!
//! Layout (little endian): the magic `b"KPF1"`, `u32 nx`, `u32 ny`,
//! `f64 L_x`, `f64 lambda_y`, `f64 t`, then `nx * ny` `f64` values with the
//! x index fastest.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::field::RealField;
use super::grid::Grid;
use crate::error::{KpError, Result};

pub const MAGIC: [u8; 4] = *b"KPF1";

/// A field together with the time it was taken at.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub field: RealField,
    pub t: f64,
}

pub fn write_snapshot<W: Write>(mut w: W, field: &RealField, t: f64) -> Result<()> {
    let g = field.grid();
    w.write_all(&MAGIC)?;
    w.write_all(&(g.nx() as u32).to_le_bytes())?;
    w.write_all(&(g.ny() as u32).to_le_bytes())?;
    w.write_all(&g.length_x().to_le_bytes())?;
    w.write_all(&g.lambda_y().to_le_bytes())?;
    w.write_all(&t.to_le_bytes())?;
    for v in field.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(f64::from_le_bytes(b))
}

fn truncated(e: std::io::Error) -> KpError {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        KpError::Format("truncated snapshot".into())
    } else {
        KpError::Io(e)
    }
}

pub fn read_snapshot<R: Read>(mut r: R) -> Result<Snapshot> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(truncated)?;
    if magic != MAGIC {
        return Err(KpError::Format(format!("bad magic {magic:?}")));
    }
    let nx = read_u32(&mut r)? as usize;
    let ny = read_u32(&mut r)? as usize;
    let length_x = read_f64(&mut r)?;
    let lambda_y = read_f64(&mut r)?;
    let t = read_f64(&mut r)?;
    let grid = Grid::new(nx, ny, length_x, lambda_y).map_err(|e| KpError::Format(e.to_string()))?;
    let mut bytes = vec![0u8; 8 * grid.len()];
    r.read_exact(&mut bytes).map_err(truncated)?;
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    let field = RealField::new(grid, values).map_err(|e| KpError::Format(e.to_string()))?;
    Ok(Snapshot { field, t })
}

pub fn save_snapshot(path: impl AsRef<Path>, field: &RealField, t: f64) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_snapshot(&mut w, field, t)?;
    w.flush()?;
    Ok(())
}

pub fn load_snapshot(path: impl AsRef<Path>) -> Result<Snapshot> {
    read_snapshot(BufReader::new(File::open(path)?))
}
