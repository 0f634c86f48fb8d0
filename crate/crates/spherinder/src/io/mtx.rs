use std::io::{BufRead, Write};

use num_complex::Complex64;
use spherinder_core::CooMatrix;

use crate::error::{Error, Result};

/// Coordinate complex general format, one-based, row-major, values in `%.17e`
/// so output is byte-identical across runs.
pub fn write_matrix_market<W: Write>(out: &mut W, m: &CooMatrix, comment: &str) -> Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate complex general")?;
    for line in comment.lines() {
        writeln!(out, "% {line}")?;
    }
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), m.nnz())?;
    for &(r, c, v) in m.entries() {
        writeln!(out, "{} {} {:.17e} {:.17e}", r + 1, c + 1, v.re, v.im)?;
    }
    Ok(())
}

pub fn read_matrix_market<R: BufRead>(input: R) -> Result<CooMatrix> {
    let bad = |msg: &str| Error::Usage(format!("matrix market: {msg}"));
    let mut lines = input.lines();
    let banner = lines.next().ok_or_else(|| bad("empty file"))??;
    if !banner.starts_with("%%MatrixMarket matrix coordinate") {
        return Err(bad("unsupported banner"));
    }
    let complex = banner.contains("complex");
    let mut shape = None;
    let mut entries = Vec::new();
    for line in lines {
        let line = line?;
        if line.starts_with('%') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if shape.is_none() {
            let n: Vec<usize> = f.iter().map(|x| x.parse().map_err(|_| bad("size line"))).collect::<Result<_>>()?;
            if n.len() != 3 {
                return Err(bad("size line"));
            }
            shape = Some((n[0], n[1]));
            continue;
        }
        let num = |i: usize| -> Result<f64> { f.get(i).ok_or_else(|| bad("short entry"))?.parse().map_err(|_| bad("number")) };
        let r: usize = f.first().ok_or_else(|| bad("short entry"))?.parse().map_err(|_| bad("index"))?;
        let c: usize = f.get(1).ok_or_else(|| bad("short entry"))?.parse().map_err(|_| bad("index"))?;
        let v = Complex64::new(num(2)?, if complex { num(3)? } else { 0.0 });
        entries.push((r - 1, c - 1, v));
    }
    let (nr, nc) = shape.ok_or_else(|| bad("missing size line"))?;
    Ok(CooMatrix::from_triplets(nr, nc, entries)?)
}
