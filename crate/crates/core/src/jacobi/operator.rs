use alloc::vec;
use alloc::vec::Vec;

use super::JacobiParams;
use crate::error::{Error, Result};

/// The parameter-moving Jacobi operators, plus `Z` (multiplication by `z`)
/// and the plain identity used by recipes that only re-index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobiOperatorKind {
    Ia,
    IaDagger,
    Ib,
    IbDagger,
    Dm,
    DmDagger,
    Ds,
    DsDagger,
    Z,
    Identity,
}

impl JacobiOperatorKind {
    pub const ALL: [JacobiOperatorKind; 9] = [
        Self::Ia,
        Self::IaDagger,
        Self::Ib,
        Self::IbDagger,
        Self::Dm,
        Self::DmDagger,
        Self::Ds,
        Self::DsDagger,
        Self::Z,
    ];

    /// `dst - src`.
    pub fn param_delta(self) -> (f64, f64) {
        use JacobiOperatorKind::*;
        match self {
            Ia => (1.0, 0.0),
            IaDagger => (-1.0, 0.0),
            Ib => (0.0, 1.0),
            IbDagger => (0.0, -1.0),
            Dm => (1.0, 1.0),
            DmDagger => (-1.0, -1.0),
            Ds => (1.0, -1.0),
            DsDagger => (-1.0, 1.0),
            Z | Identity => (0.0, 0.0),
        }
    }

    /// Range of `row - col` that may be nonzero.
    pub fn band(self) -> (i32, i32) {
        use JacobiOperatorKind::*;
        match self {
            Ia | Ib => (-1, 0),
            IaDagger | IbDagger => (0, 1),
            Dm => (-1, -1),
            DmDagger => (1, 1),
            Ds | DsDagger | Identity => (0, 0),
            Z => (-1, 1),
        }
    }

    /// Output degree at the band extremity relative to the input degree.
    pub fn degree_shift(self) -> i32 {
        let (lo, hi) = self.band();
        if hi > 0 {
            hi
        } else {
            lo
        }
    }

    pub fn dst(self, src: JacobiParams) -> JacobiParams {
        let (da, db) = self.param_delta();
        src.shifted(da, db)
    }

    pub fn is_embedding(self) -> bool {
        matches!(self, Self::Ia | Self::IaDagger | Self::Ib | Self::IbDagger)
    }

    pub fn is_differential(self) -> bool {
        matches!(self, Self::Dm | Self::DmDagger | Self::Ds | Self::DsDagger)
    }

    /// Expansion of the operator applied to `P_n^{(a,b)}` in the destination
    /// family. Parameters are not validated here.
    pub fn column(self, n: usize, p: JacobiParams) -> Column {
        use JacobiOperatorKind::*;
        let (a, b) = (p.a, p.b);
        let nf = n as f64;
        let q = 2.0 * nf + a + b + 1.0;
        let mut c = Column::default();
        match self {
            Identity => c.push(n as i64, 1.0),
            Ia => {
                if n == 0 {
                    c.push(0, 1.0);
                } else {
                    c.push(n as i64 - 1, -(nf + b) / q);
                    c.push(n as i64, (nf + a + b + 1.0) / q);
                }
            }
            Ib => {
                if n == 0 {
                    c.push(0, 1.0);
                } else {
                    c.push(n as i64 - 1, (nf + a) / q);
                    c.push(n as i64, (nf + a + b + 1.0) / q);
                }
            }
            IaDagger => {
                c.push(n as i64, 2.0 * (nf + a) / q);
                c.push(n as i64 + 1, -2.0 * (nf + 1.0) / q);
            }
            IbDagger => {
                c.push(n as i64, 2.0 * (nf + b) / q);
                c.push(n as i64 + 1, 2.0 * (nf + 1.0) / q);
            }
            Dm => c.push(n as i64 - 1, 0.5 * (nf + a + b + 1.0)),
            DmDagger => c.push(n as i64 + 1, 2.0 * (nf + 1.0)),
            Ds => c.push(n as i64, nf + b),
            DsDagger => c.push(n as i64, nf + a),
            Z => {
                // Z = (Ib† Ib - Ia† Ia) / 2
                let mut acc = [0.0; 3];
                let pb = p.shifted(0.0, 1.0);
                for (j, v) in Ib.column(n, p).iter() {
                    for (i, w) in IbDagger.column(j, pb).iter() {
                        acc[i + 1 - n] += 0.5 * v * w;
                    }
                }
                let pa = p.shifted(1.0, 0.0);
                for (j, v) in Ia.column(n, p).iter() {
                    for (i, w) in IaDagger.column(j, pa).iter() {
                        acc[i + 1 - n] -= 0.5 * v * w;
                    }
                }
                for (off, v) in acc.iter().enumerate() {
                    let row = n as i64 + off as i64 - 1;
                    if *v != 0.0 || off == 1 {
                        c.push(row, *v);
                    }
                }
            }
        }
        c
    }
}

/// At most three `(row, value)` pairs; negative rows are dropped on insert.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Column {
    rows: [usize; 3],
    vals: [f64; 3],
    len: usize,
}

impl Column {
    fn push(&mut self, row: i64, val: f64) {
        if row >= 0 {
            self.rows[self.len] = row as usize;
            self.vals[self.len] = val;
            self.len += 1;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        (0..self.len).map(move |i| (self.rows[i], self.vals[i]))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, row: usize) -> f64 {
        self.iter().find(|&(r, _)| r == row).map_or(0.0, |(_, v)| v)
    }
}

/// Banded matrix of one operator kind acting on degrees `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedJacobiOperator {
    pub kind: JacobiOperatorKind,
    pub src: JacobiParams,
    pub dst: JacobiParams,
    pub n_max: usize,
    pub degree_shift: i32,
    entries: Vec<(usize, usize, f64)>,
}

impl BandedJacobiOperator {
    pub fn new(kind: JacobiOperatorKind, n_max: usize, src: JacobiParams) -> Result<Self> {
        src.validate()?;
        let dst = kind.dst(src);
        dst.validate()?;
        let mut entries = Vec::new();
        for n in 0..=n_max {
            for (row, v) in kind.column(n, src).iter() {
                entries.push((row, n, v));
            }
        }
        Ok(Self { kind, src, dst, n_max, degree_shift: kind.degree_shift(), entries })
    }

    pub fn n_rows(&self) -> usize {
        (self.n_max as i64 + 1 + self.kind.band().1 as i64).max(0) as usize
    }

    pub fn n_cols(&self) -> usize {
        self.n_max + 1
    }

    /// `(row, col, value)` in column order.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries
            .iter()
            .find(|&&(r, c, _)| r == row && c == col)
            .map_or(0.0, |e| e.2)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n_cols()]; self.n_rows()];
        for &(r, c, v) in &self.entries {
            m[r][c] += v;
        }
        m
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n_rows()];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }
}

pub fn embedding_operator(
    kind: JacobiOperatorKind,
    n_max: usize,
    p: JacobiParams,
) -> Result<BandedJacobiOperator> {
    if !kind.is_embedding() {
        return Err(Error::Assembly(alloc::format!("{kind:?} is not an embedding operator")));
    }
    BandedJacobiOperator::new(kind, n_max, p)
}

pub fn differential_operator(
    kind: JacobiOperatorKind,
    n_max: usize,
    p: JacobiParams,
) -> Result<BandedJacobiOperator> {
    if !kind.is_differential() {
        return Err(Error::Assembly(alloc::format!("{kind:?} is not a differential operator")));
    }
    BandedJacobiOperator::new(kind, n_max, p)
}

/// Multiplication by `z`, tridiagonal on `(a, a)`.
pub fn multiplication_z(n_max: usize, p: JacobiParams) -> Result<BandedJacobiOperator> {
    if p.a != p.b {
        return Err(Error::Assembly(alloc::format!(
            "multiplication_z expects a = b, got ({}, {})",
            p.a,
            p.b
        )));
    }
    BandedJacobiOperator::new(JacobiOperatorKind::Z, n_max, p)
}
