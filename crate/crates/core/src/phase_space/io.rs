//! Regression-fixture formats for [`WignerGrid`].
//!
//! * CSV: header `x,p,w`, one row per node, `x` index outermost.
//! * Binary (little-endian): `x_min, x_max, n_x, p_min, p_max, n_p` as `f64`,
//!   then the `n_x·n_p` samples as row-major `f64`.

use std::io::{Read, Write};

use super::grid::{GridSpec, WignerGrid};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn write_csv<T: Real, W: Write>(grid: &WignerGrid<T>, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["x", "p", "w"])?;
    let spec = grid.spec();
    for i in 0..spec.n_x {
        let x = spec.x(i).to_f64_lossy();
        for j in 0..spec.n_p {
            wtr.serialize((x, spec.p(j).to_f64_lossy(), grid.at(i, j).to_f64_lossy()))?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a grid written by [`write_csv`]. Node coordinates must be uniformly
/// spaced; the exclusive upper extents are recovered as `last + step`.
pub fn read_csv<T: Real, R: Read>(input: R) -> Result<WignerGrid<T>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "p", "w"] {
        return Err(Error::Io(format!("expected header x,p,w, got {headers:?}")));
    }
    let mut xs: Vec<f64> = Vec::new();
    let mut ps: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    for (row, rec) in rdr.deserialize::<(f64, f64, f64)>().enumerate() {
        let (x, p, w) = rec?;
        if xs.last() != Some(&x) {
            xs.push(x);
        }
        if xs.len() == 1 {
            ps.push(p);
        } else if ps.get(row % ps.len().max(1)) != Some(&p) {
            return Err(Error::Io(format!(
                "row {row}: p = {p} breaks the node ordering"
            )));
        }
        values.push(T::lit(w));
    }
    let axis = |nodes: &[f64], name: &str| -> Result<(f64, f64, usize)> {
        if nodes.len() < 2 {
            return Err(Error::Io(format!("axis {name} needs at least two nodes")));
        }
        let step = (nodes[nodes.len() - 1] - nodes[0]) / (nodes.len() - 1) as f64;
        Ok((nodes[0], nodes[nodes.len() - 1] + step, nodes.len()))
    };
    let (x_min, x_max, n_x) = axis(&xs, "x")?;
    let (p_min, p_max, n_p) = axis(&ps, "p")?;
    let spec = GridSpec::new(
        T::lit(x_min),
        T::lit(x_max),
        T::lit(p_min),
        T::lit(p_max),
        n_x,
        n_p,
    )?;
    WignerGrid::from_values(spec, values)
}

pub fn write_binary<T: Real, W: Write>(grid: &WignerGrid<T>, mut out: W) -> Result<()> {
    let spec = grid.spec();
    let header = [
        spec.x_min.to_f64_lossy(),
        spec.x_max.to_f64_lossy(),
        spec.n_x as f64,
        spec.p_min.to_f64_lossy(),
        spec.p_max.to_f64_lossy(),
        spec.n_p as f64,
    ];
    for v in header {
        out.write_all(&v.to_le_bytes())?;
    }
    for v in grid.values() {
        out.write_all(&v.to_f64_lossy().to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_binary<T: Real, R: Read>(mut input: R) -> Result<WignerGrid<T>> {
    let mut next = || -> Result<f64> {
        let mut b = [0u8; 8];
        input.read_exact(&mut b)?;
        Ok(f64::from_le_bytes(b))
    };
    let mut h = [0.0; 6];
    for slot in h.iter_mut() {
        *slot = next()?;
    }
    let count = |v: f64| -> Result<usize> {
        if v.fract() != 0.0 || v < 0.0 || v > (1u64 << 32) as f64 {
            return Err(Error::Io(format!("invalid axis count {v}")));
        }
        Ok(v as usize)
    };
    let spec = GridSpec::new(
        T::lit(h[0]),
        T::lit(h[1]),
        T::lit(h[3]),
        T::lit(h[4]),
        count(h[2])?,
        count(h[5])?,
    )?;
    let mut values = Vec::with_capacity(spec.len());
    for _ in 0..spec.len() {
        values.push(T::lit(next()?));
    }
    WignerGrid::from_values(spec, values)
}
