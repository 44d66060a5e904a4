//! Grid file format.
//!
//! CSV layout:
//! ```text
//! # qprop-grid v1
//! # nq=<..> np=<..> qmin=<..> qmax=<..> pmin=<..> pmax=<..> ordering=g1,g2,g3 t=<..>
//! q,p,re,im            (row-major, q outer, p inner)
//! ```
//! Values are printed with 17 significant digits so identical runs produce
//! byte-identical files. A JSON sidecar (same path with `.json` appended)
//! duplicates the metadata plus the normalization sum.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::OrderingParams;
use crate::phasegrid::{GridSpec, PhaseGrid};

pub const FORMAT_TAG: &str = "qprop-grid v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSidecar {
    pub format: String,
    pub nq: usize,
    pub np: usize,
    pub qmin: f64,
    pub qmax: f64,
    pub pmin: f64,
    pub pmax: f64,
    pub ordering: OrderingParams,
    pub t: f64,
    pub normalization: (f64, f64),
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render the CSV contents of a grid.
pub fn grid_to_csv(grid: &PhaseGrid, ordering: OrderingParams, t: f64) -> String {
    let spec = grid.spec;
    let mut out = String::with_capacity(grid.values.len() * 80 + 256);
    out.push_str("# ");
    out.push_str(FORMAT_TAG);
    out.push('\n');
    let _ = writeln!(
        out,
        "# nq={} np={} qmin={} qmax={} pmin={} pmax={} ordering={},{},{} t={}",
        spec.nq,
        spec.np,
        fmt17(spec.qmin),
        fmt17(spec.qmax),
        fmt17(spec.pmin),
        fmt17(spec.pmax),
        fmt17(ordering.g1),
        fmt17(ordering.g2),
        fmt17(ordering.g3),
        fmt17(t),
    );
    for j in 0..spec.nq {
        let q = fmt17(spec.q_at(j));
        for k in 0..spec.np {
            let v = grid.values[j * spec.np + k];
            let _ = writeln!(
                out,
                "{q},{},{},{}",
                fmt17(spec.p_at(k)),
                fmt17(v.re),
                fmt17(v.im)
            );
        }
    }
    out
}

/// Write `<base>.csv` and the `<base>.json` sidecar.
pub fn write_grid(base: &Path, grid: &PhaseGrid, ordering: OrderingParams, t: f64) -> Result<()> {
    if let Some(dir) = base.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let csv_path = base.with_extension("csv");
    std::fs::write(&csv_path, grid_to_csv(grid, ordering, t))?;
    let norm = grid.normalization();
    let sidecar = GridSidecar {
        format: FORMAT_TAG.to_owned(),
        nq: grid.spec.nq,
        np: grid.spec.np,
        qmin: grid.spec.qmin,
        qmax: grid.spec.qmax,
        pmin: grid.spec.pmin,
        pmax: grid.spec.pmax,
        ordering,
        t,
        normalization: (norm.re, norm.im),
    };
    std::fs::write(
        base.with_extension("json"),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(())
}

/// Read a grid CSV back; returns the grid with its ordering and time stamp.
pub fn read_grid(path: &Path) -> Result<(PhaseGrid, OrderingParams, f64)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::GridFile("empty file".into()))?;
    if header.trim_start_matches('#').trim() != FORMAT_TAG {
        return Err(Error::GridFile(format!("unexpected header {header:?}")));
    }
    let meta = lines
        .next()
        .ok_or_else(|| Error::GridFile("missing metadata line".into()))?;
    let mut fields = std::collections::HashMap::new();
    for token in meta.trim_start_matches('#').split_whitespace() {
        if let Some((key, value)) = token.split_once('=') {
            fields.insert(key.to_owned(), value.to_owned());
        }
    }
    let get = |key: &str| -> Result<&String> {
        fields
            .get(key)
            .ok_or_else(|| Error::GridFile(format!("missing metadata key {key}")))
    };
    let parse_f = |key: &str| -> Result<f64> {
        get(key)?
            .parse::<f64>()
            .map_err(|e| Error::GridFile(format!("bad {key}: {e}")))
    };
    let parse_n = |key: &str| -> Result<usize> {
        get(key)?
            .parse::<usize>()
            .map_err(|e| Error::GridFile(format!("bad {key}: {e}")))
    };
    let spec = GridSpec::new(
        parse_n("nq")?,
        parse_n("np")?,
        parse_f("qmin")?,
        parse_f("qmax")?,
        parse_f("pmin")?,
        parse_f("pmax")?,
    )?;
    let ordering_raw = get("ordering")?;
    let g: Vec<f64> = ordering_raw
        .split(',')
        .map(|s| s.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::GridFile(format!("bad ordering: {e}")))?;
    if g.len() != 3 {
        return Err(Error::GridFile("ordering needs three components".into()));
    }
    let ordering = OrderingParams::new(g[0], g[1], g[2]);
    let t = parse_f("t")?;

    let mut values = Vec::with_capacity(spec.nq * spec.np);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            return Err(Error::GridFile(format!("row {i}: expected 4 columns")));
        }
        let re: f64 = cols[2]
            .parse()
            .map_err(|e| Error::GridFile(format!("row {i}: {e}")))?;
        let im: f64 = cols[3]
            .parse()
            .map_err(|e| Error::GridFile(format!("row {i}: {e}")))?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != spec.nq * spec.np {
        return Err(Error::GridFile(format!(
            "expected {} rows, found {}",
            spec.nq * spec.np,
            values.len()
        )));
    }
    Ok((PhaseGrid { spec, values }, ordering, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let spec = GridSpec::square(16, 4.0).unwrap();
        let grid = PhaseGrid::from_fn(spec, |q, p| Complex64::new(q * 0.1 - p, 0.01 * q * p));
        let dir = std::env::temp_dir().join("qprop-gridfile-test");
        std::fs::create_dir_all(&dir).unwrap();
        let base = dir.join("grid");
        write_grid(&base, &grid, OrderingParams::standard(), 0.25).unwrap();
        let (back, ordering, t) = read_grid(&base.with_extension("csv")).unwrap();
        assert_eq!(ordering, OrderingParams::standard());
        assert_eq!(t, 0.25);
        assert_eq!(back.spec, spec);
        assert!(grid.max_abs_diff(&back) < 1e-15);

        let sidecar: GridSidecar =
            serde_json::from_str(&std::fs::read_to_string(base.with_extension("json")).unwrap())
                .unwrap();
        assert_eq!(sidecar.format, FORMAT_TAG);
        assert_eq!(sidecar.nq, 16);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn deterministic_output() {
        let spec = GridSpec::square(8, 2.0).unwrap();
        let grid = PhaseGrid::from_fn(spec, |q, p| Complex64::new(q + p, q - p));
        let a = grid_to_csv(&grid, OrderingParams::wigner(), 0.0);
        let b = grid_to_csv(&grid, OrderingParams::wigner(), 0.0);
        assert_eq!(a, b);
    }
}
