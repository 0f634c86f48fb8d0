use alloc::vec::Vec;

use super::{eval_unchecked, JacobiParams};
use crate::error::{Error, Result};
use crate::math::{abs, exp, ln, ln_gamma, sqrt};
use crate::tridiag::symmetric_tridiagonal_eigen;

/// Gauss rule for `∫ f(z) (1-z)^a (1+z)^b dz`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub params: JacobiParams,
    pub n_points: usize,
}

impl QuadratureRule {
    /// Σ w_i f(z_i)
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&z, &w)| w * f(z)).sum()
    }
}

/// Golub-Welsch nodes from the symmetric Jacobi matrix, polished by Newton on
/// `P_n` and paired with Christoffel weights.
pub fn gauss_jacobi(n_points: usize, p: JacobiParams) -> Result<QuadratureRule> {
    p.validate()?;
    if n_points == 0 {
        return Err(Error::EmptyRule);
    }
    let n = n_points;
    let (a, b) = (p.a, p.b);

    let diag: Vec<f64> = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (a + b + 2.0)
            } else {
                let s = 2.0 * k as f64 + a + b;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + a + b;
            let beta = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
            };
            sqrt(beta)
        })
        .collect();
    let eig = symmetric_tridiagonal_eigen(&diag, &off, 1);

    let ln_c = (a + b + 1.0) * core::f64::consts::LN_2 + ln_gamma(n as f64 + a + 1.0)
        + ln_gamma(n as f64 + b + 1.0)
        - ln_gamma(n as f64 + a + b + 1.0)
        - ln_gamma(n as f64 + 1.0);
    let dp = p.shifted(1.0, 1.0);
    let dscale = 0.5 * (n as f64 + a + b + 1.0);

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &eig.values {
        let mut x = x0;
        for _ in 0..3 {
            let f = eval_unchecked(n, p, x);
            let df = dscale * eval_unchecked(n - 1, dp, x);
            let step = f / df;
            if !step.is_finite() {
                break;
            }
            let next = x - step;
            if abs(next) >= 1.0 {
                break;
            }
            x = next;
            if abs(step) < 1e-16 {
                break;
            }
        }
        let df = dscale * eval_unchecked(n - 1, dp, x);
        let w = exp(ln_c - ln((1.0 - x) * (1.0 + x)) - 2.0 * ln(abs(df)));
        nodes.push(x);
        weights.push(w);
    }
    Ok(QuadratureRule { nodes, weights, params: p, n_points })
}
