//! Classical Jacobi polynomials `P_n^{(a,b)}` on `[-1, 1]` with weight
//! `(1-z)^a (1+z)^b`.
//!
//! Everything here uses the classical normalization `P_n(1) = C(n+a, n)`.
//! The orthonormal factors needed by the ball basis are obtained by dividing
//! by `sqrt(h_n)`, see [`jacobi_norm`].

mod operator;
mod oracle;
mod quadrature;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{exp, ln, ln_gamma};

pub use operator::{
    differential_operator, embedding_operator, multiplication_z, BandedJacobiOperator, Column,
    JacobiOperatorKind,
};
pub use oracle::{operator_oracle, OracleAction};
pub use quadrature::{gauss_jacobi, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub a: f64,
    pub b: f64,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let p = Self { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a > -1.0 && self.b > -1.0 {
            Ok(())
        } else {
            Err(Error::ParameterDomain { a: self.a, b: self.b })
        }
    }

    pub fn shifted(&self, da: f64, db: f64) -> Self {
        Self { a: self.a + da, b: self.b + db }
    }
}

/// Classical `P_n^{(a,b)}(z)` by the three-term recurrence.
pub fn eval_jacobi(n: usize, p: JacobiParams, z: f64) -> Result<f64> {
    p.validate()?;
    Ok(eval_unchecked(n, p, z))
}

pub(crate) fn eval_unchecked(n: usize, p: JacobiParams, z: f64) -> f64 {
    let mut out = 1.0;
    recurrence(n, p, z, |k, v| {
        if k == n {
            out = v;
        }
    });
    out
}

/// All of `P_0 .. P_{n_max}` at a single point.
pub fn eval_jacobi_all(n_max: usize, p: JacobiParams, z: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    recurrence(n_max, p, z, |k, v| out[k] = v);
    out
}

pub(crate) fn recurrence(n_max: usize, p: JacobiParams, z: f64, mut sink: impl FnMut(usize, f64)) {
    let (a, b) = (p.a, p.b);
    sink(0, 1.0);
    if n_max == 0 {
        return;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * ((a + b + 2.0) * z + (a - b));
    sink(1, cur);
    for n in 2..=n_max {
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let c0 = 2.0 * nf * (nf + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
        let c2 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
        let next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
        sink(n, cur);
    }
}

/// `d/dz P_n^{(a,b)}(z) = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}(z)`.
pub fn eval_jacobi_derivative(n: usize, p: JacobiParams, z: f64) -> Result<f64> {
    p.validate()?;
    if n == 0 {
        return Ok(0.0);
    }
    let scale = 0.5 * (n as f64 + p.a + p.b + 1.0);
    Ok(scale * eval_unchecked(n - 1, p.shifted(1.0, 1.0), z))
}

/// `ln h_n` where `h_n = ∫ (P_n^{(a,b)})^2 (1-z)^a (1+z)^b dz`.
pub fn ln_jacobi_norm(n: usize, p: JacobiParams) -> Result<f64> {
    p.validate()?;
    Ok(ln_norm_unchecked(n, p))
}

pub(crate) fn ln_norm_unchecked(n: usize, p: JacobiParams) -> f64 {
    let (a, b) = (p.a, p.b);
    let ln2 = core::f64::consts::LN_2;
    if n == 0 {
        return (a + b + 1.0) * ln2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0);
    }
    let nf = n as f64;
    (a + b + 1.0) * ln2 - ln(2.0 * nf + a + b + 1.0) + ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0)
        - ln_gamma(nf + a + b + 1.0)
        - ln_gamma(nf + 1.0)
}

/// Squared norm `h_n` of the classical polynomial under its own weight.
pub fn jacobi_norm(n: usize, p: JacobiParams) -> Result<f64> {
    Ok(exp(ln_jacobi_norm(n, p)?))
}

/// Orthonormal `P_n / sqrt(h_n)` for `n = 0..=n_max` at one point.
pub fn eval_orthonormal_all(n_max: usize, p: JacobiParams, z: f64) -> Vec<f64> {
    let mut v = eval_jacobi_all(n_max, p, z);
    for (n, x) in v.iter_mut().enumerate() {
        *x *= exp(-0.5 * ln_norm_unchecked(n, p));
    }
    v
}

/// Classical endpoint value `P_n^{(a,b)}(1) = Γ(n+a+1) / (Γ(a+1) n!)`.
pub fn value_at_one(n: usize, p: JacobiParams) -> f64 {
    let nf = n as f64;
    exp(ln_gamma(nf + p.a + 1.0) - ln_gamma(p.a + 1.0) - ln_gamma(nf + 1.0))
}
