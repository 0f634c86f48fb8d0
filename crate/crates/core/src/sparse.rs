//! Coordinate-format complex sparse matrices.
//!
//! After [`CooMatrix::canonicalize`] the entries are sorted row-major, unique
//! and nonzero, which is the form every assembly routine returns.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::sqrt;

#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl CooMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.push(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_triplets(nrows: usize, ncols: usize, entries: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        for &(r, c, _) in &entries {
            if r >= nrows || c >= ncols {
                return Err(Error::Dimension { expected: nrows.max(ncols), found: r.max(c) });
            }
        }
        let mut m = Self { nrows, ncols, entries };
        m.canonicalize();
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    /// Append an entry; call [`canonicalize`](Self::canonicalize) before
    /// relying on ordering or uniqueness.
    pub fn push(&mut self, row: usize, col: usize, v: Complex64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        self.entries.push((row, col, v));
    }

    pub fn canonicalize(&mut self) {
        self.entries.sort_by_key(|e| (e.0, e.1));
        let mut out: Vec<(usize, usize, Complex64)> = Vec::with_capacity(self.entries.len());
        for &(r, c, v) in &self.entries {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|e| e.2.re != 0.0 || e.2.im != 0.0);
        self.entries = out;
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(row, col))) {
            Ok(i) => self.entries[i].2,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = self.clone();
        for e in &mut m.entries {
            e.2 *= s;
        }
        m.canonicalize();
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension { expected: self.nrows * self.ncols, found: other.nrows * other.ncols });
        }
        let mut m = self.clone();
        m.entries.extend_from_slice(&other.entries);
        m.canonicalize();
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `self * other`
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::Dimension { expected: self.ncols, found: other.nrows });
        }
        let starts = other.row_starts();
        let mut out = Self::new(self.nrows, other.ncols);
        for &(i, k, v) in &self.entries {
            for &(_, j, w) in &other.entries[starts[k]..starts[k + 1]] {
                out.entries.push((i, j, v * w));
            }
        }
        out.canonicalize();
        Ok(out)
    }

    /// Offsets of each row's first entry (canonical order assumed).
    pub fn row_starts(&self) -> Vec<usize> {
        let mut starts = vec![0; self.nrows + 1];
        for &(r, _, _) in &self.entries {
            starts[r + 1] += 1;
        }
        for i in 0..self.nrows {
            starts[i + 1] += starts[i];
        }
        starts
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.ncols, "vector length must match column count");
        let mut y = vec![Complex64::new(0.0, 0.0); self.nrows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::new(self.ncols, self.nrows);
        m.entries = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        m.canonicalize();
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut d = vec![vec![Complex64::new(0.0, 0.0); self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            d[r][c] += v;
        }
        d
    }

    /// Copy `block` into a new matrix of the given shape at the given offset.
    pub fn embed(&self, nrows: usize, ncols: usize, row_off: usize, col_off: usize) -> Result<Self> {
        if row_off + self.nrows > nrows || col_off + self.ncols > ncols {
            return Err(Error::Dimension { expected: nrows, found: row_off + self.nrows });
        }
        let mut m = Self::new(nrows, ncols);
        m.entries = self.entries.iter().map(|&(r, c, v)| (r + row_off, c + col_off, v)).collect();
        Ok(m)
    }

    /// Add `block` in place at an offset.
    pub fn add_block(&mut self, row_off: usize, col_off: usize, block: &Self) -> Result<()> {
        if row_off + block.nrows > self.nrows || col_off + block.ncols > self.ncols {
            return Err(Error::Dimension { expected: self.nrows, found: row_off + block.nrows });
        }
        self.entries.extend(block.entries.iter().map(|&(r, c, v)| (r + row_off, c + col_off, v)));
        self.canonicalize();
        Ok(())
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            map[old] = new;
        }
        let mut m = Self::new(self.nrows, cols.len());
        m.entries = self
            .entries
            .iter()
            .filter(|e| map[e.1] != usize::MAX)
            .map(|&(r, c, v)| (r, map[c], v))
            .collect();
        m.canonicalize();
        m
    }

    /// Rows in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        self.transpose().select_columns(rows).transpose()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.entries.iter().map(|e| e.2.norm_sqr()).sum())
    }
}
