use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use spherinder_core::jacobi::{gauss_jacobi, JacobiParams};
use spherinder_core::SpherinderPoint;

use crate::error::{Error, Result};

/// Descriptive lines written as `#` comments above the CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct GridHeader {
    pub slice: String,
    pub problem: String,
    pub m: u32,
    pub l_max: usize,
    pub n_max: usize,
    /// `name: tag label` per dumped field
    pub tags: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridDump {
    pub header: GridHeader,
    pub points: Vec<SpherinderPoint>,
    pub columns: Vec<(String, Vec<Complex64>)>,
}

impl GridDump {
    pub fn new(header: GridHeader, points: Vec<SpherinderPoint>) -> Self {
        Self { header, points, columns: Vec::new() }
    }

    pub fn push(&mut self, name: &str, values: Vec<Complex64>) -> Result<()> {
        if values.len() != self.points.len() {
            return Err(Error::Usage(format!(
                "grid column {name} has {} values for {} points",
                values.len(),
                self.points.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Solver(format!("grid column {name} is not finite at row {i}")));
        }
        self.columns.push((name.to_string(), values));
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.points.len()
    }
}

fn legendre_nodes(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(gauss_jacobi(n, JacobiParams::new(0.0, 0.0)?)?.nodes)
}

/// `ns × neta` Gauss-Legendre points of the half plane `φ = phi`, `s`
/// mapped to `(0, 1)`. Rows run over `η` fastest.
pub fn meridional_grid(ns: usize, neta: usize, phi: f64) -> Result<Vec<SpherinderPoint>> {
    let s = legendre_nodes(ns)?;
    let eta = legendre_nodes(neta)?;
    let mut out = Vec::with_capacity(ns * neta);
    for x in &s {
        for &e in &eta {
            out.push(SpherinderPoint::new(0.5 * (1.0 + x), phi, e)?);
        }
    }
    Ok(out)
}

/// `ns` Gauss radii times `nphi` equispaced angles on `η = 0`.
pub fn equatorial_grid(ns: usize, nphi: usize) -> Result<Vec<SpherinderPoint>> {
    let s = legendre_nodes(ns)?;
    let mut out = Vec::with_capacity(ns * nphi);
    for x in &s {
        for j in 0..nphi {
            out.push(SpherinderPoint::new(0.5 * (1.0 + x), 2.0 * PI * j as f64 / nphi as f64, 0.0)?);
        }
    }
    Ok(out)
}

pub fn write_grid<W: Write>(out: &mut W, dump: &GridDump) -> Result<()> {
    let h = &dump.header;
    writeln!(out, "# slice: {}", h.slice)?;
    writeln!(out, "# problem: {} m={} Lmax={} Nmax={}", h.problem, h.m, h.l_max, h.n_max)?;
    for (name, tag) in &h.tags {
        writeln!(out, "# {name}: {tag}")?;
    }
    writeln!(out, "# rows: {}", dump.rows())?;
    let mut w = csv::Writer::from_writer(out);
    let mut head = vec!["s".to_string(), "phi".into(), "eta".into(), "z".into()];
    for (name, _) in &dump.columns {
        head.push(format!("{name}_re"));
        head.push(format!("{name}_im"));
    }
    w.write_record(&head).map_err(std::io::Error::from)?;
    for (i, p) in dump.points.iter().enumerate() {
        let mut rec = vec![fmt(p.s), fmt(p.phi), fmt(p.eta), fmt(p.z())];
        for (_, v) in &dump.columns {
            rec.push(fmt(v[i].re));
            rec.push(fmt(v[i].im));
        }
        w.write_record(&rec).map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}

fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> GridHeader {
        GridHeader {
            slice: "meridional phi=0".into(),
            problem: "bessel-tau".into(),
            m: 0,
            l_max: 2,
            n_max: 2,
            tags: vec![("f".into(), "m=0 s=0 a=0".into())],
        }
    }

    #[test]
    fn meridional_layout() {
        let pts = meridional_grid(4, 3, 0.0).unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.iter().all(|p| p.s > 0.0 && p.s < 1.0 && p.eta.abs() < 1.0));
        assert_eq!(pts[0].s, pts[2].s);
        let eq = equatorial_grid(3, 8).unwrap();
        assert_eq!(eq.len(), 24);
        assert!(eq.iter().all(|p| p.eta == 0.0));
    }

    #[test]
    fn csv_has_one_row_per_point() {
        let pts = meridional_grid(3, 2, 0.0).unwrap();
        let n = pts.len();
        let mut dump = GridDump::new(header(), pts);
        dump.push("f", vec![Complex64::new(1.0, -1.0); n]).unwrap();
        let mut buf = Vec::new();
        write_grid(&mut buf, &dump).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let table: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(table.len(), n + 1);
        assert_eq!(table[0], "s,phi,eta,z,f_re,f_im");
    }

    #[test]
    fn rejects_bad_columns() {
        let pts = meridional_grid(2, 2, 0.0).unwrap();
        let mut dump = GridDump::new(header(), pts);
        assert!(dump.push("f", vec![Complex64::new(0.0, 0.0); 3]).is_err());
        assert!(dump.push("f", vec![Complex64::new(f64::NAN, 0.0); 4]).is_err());
    }
}
