//! Generalized eigensolvers for `L x = λ M x`.

mod arnoldi;
mod dense;

use num_complex::Complex64;
use spherinder_core::CooMatrix;

use crate::error::{Error, Result};

pub use arnoldi::shift_invert;
pub use dense::dense_full;

/// Pairs with `|β| < INFINITE_THRESHOLD·‖M‖_F` are reported as infinite.
pub const INFINITE_THRESHOLD: f64 = 1e-10;

/// Above this size the front end switches to shift-invert by default.
pub const DENSE_LIMIT: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveMode {
    DenseFull,
    ShiftInvert { target: Complex64, count: usize },
}

#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub eigenvalues: Vec<Complex64>,
    /// one vector per eigenvalue, if requested
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
    /// relative residual `‖Lx - λMx‖ / ((‖L‖ + |λ|‖M‖)‖x‖)` per pair
    pub residuals: Vec<f64>,
    pub mode: SolveMode,
    pub tol: f64,
    /// pairs rejected as infinite (dense) or not converged (iterative)
    pub dropped: usize,
    pub converged: bool,
}

impl EigenSolution {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Index of the eigenvalue with the largest real part.
    pub fn least_damped(&self) -> Option<usize> {
        (0..self.eigenvalues.len()).max_by(|&a, &b| self.eigenvalues[a].re.total_cmp(&self.eigenvalues[b].re))
    }

    pub fn vector(&self, i: usize) -> Option<&[Complex64]> {
        self.eigenvectors.as_ref().map(|v| v[i].as_slice())
    }
}

pub fn solve_gevp(l: &CooMatrix, m: &CooMatrix, mode: SolveMode, tol: f64, vectors: bool) -> Result<EigenSolution> {
    if l.shape() != m.shape() || l.nrows() != l.ncols() {
        return Err(Error::Solver(format!("pencil shapes {:?} and {:?}", l.shape(), m.shape())));
    }
    match mode {
        SolveMode::DenseFull => dense_full(l, m, tol, vectors),
        SolveMode::ShiftInvert { target, count } => shift_invert(l, m, target, count, tol, vectors),
    }
}

/// `‖Lx - λMx‖ / ((‖L‖_F + |λ|‖M‖_F)‖x‖)`
pub fn relative_residual(l: &CooMatrix, m: &CooMatrix, lambda: Complex64, x: &[Complex64]) -> f64 {
    let lx = l.apply(x);
    let mx = m.apply(x);
    let r: f64 = lx.iter().zip(&mx).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
    let xn = norm(x);
    let scale = (l.frobenius_norm() + lambda.norm() * m.frobenius_norm()) * xn;
    if scale == 0.0 {
        r
    } else {
        r / scale
    }
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Scale to unit norm with the largest entry real and positive.
pub(crate) fn normalize(x: &mut [Complex64]) {
    let big = x.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
    let n = norm(x);
    if n == 0.0 || big.norm() == 0.0 {
        return;
    }
    let phase = big.conj() / big.norm() / n;
    for c in x.iter_mut() {
        *c *= phase;
    }
}
