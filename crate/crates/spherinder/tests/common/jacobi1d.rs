//! One-dimensional oracle for the banded Jacobi operators.
//!
//! Polynomials come from the explicit binomial sum rather than the
//! recurrence, derivatives are taken term by term, and entries are obtained
//! by Gauss projection in the destination family. The Gauss rule itself is
//! checked against Beta-function moments before use.

use spherinder_core::jacobi::{gauss_jacobi, BandedJacobiOperator, JacobiOperatorKind, JacobiParams};

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Generalized binomial `C(x, k)` for `x > -1`, `k` a nonnegative integer.
fn binom(x: f64, k: usize) -> f64 {
    let mut out = 1.0;
    for i in 0..k {
        out *= (x - i as f64) / (i as f64 + 1.0);
    }
    out
}

/// `(P_n^{(a,b)}(z), d/dz P_n^{(a,b)}(z))` from
/// `Σ_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^{n-s}`.
pub fn jacobi_explicit(n: usize, a: f64, b: f64, z: f64) -> (f64, f64) {
    let u = 0.5 * (z - 1.0);
    let v = 0.5 * (z + 1.0);
    let mut p = 0.0;
    let mut dp = 0.0;
    for s in 0..=n {
        let c = binom(n as f64 + a, n - s) * binom(n as f64 + b, s);
        let us = u.powi(s as i32);
        let vs = v.powi((n - s) as i32);
        p += c * us * vs;
        if s > 0 {
            dp += c * 0.5 * s as f64 * u.powi(s as i32 - 1) * vs;
        }
        if n > s {
            dp += c * 0.5 * (n - s) as f64 * us * v.powi((n - s) as i32 - 1);
        }
    }
    (p, dp)
}

/// `∫ (1-z)^a (1+z)^b dz`
fn weight_mass(a: f64, b: f64) -> f64 {
    (2f64.ln() * (a + b + 1.0) + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp()
}

/// Largest relative moment error of the Gauss rule against
/// `∫ w (1+z)^k = 2^{a+b+k+1} B(a+1, b+k+1)` for `k < 2n`.
pub fn rule_moment_error(n: usize, a: f64, b: f64) -> f64 {
    let rule = gauss_jacobi(n, JacobiParams::new(a, b).unwrap()).unwrap();
    (0..2 * n)
        .map(|k| {
            let exact = weight_mass(a, b + k as f64);
            let got = rule.integrate(|z| (1.0 + z).powi(k as i32));
            ((got - exact) / exact).abs()
        })
        .fold(0.0, f64::max)
}

fn action(kind: JacobiOperatorKind, a: f64, b: f64, z: f64, f: f64, df: f64) -> f64 {
    use JacobiOperatorKind::*;
    match kind {
        Ia | Ib | Identity => f,
        IaDagger => (1.0 - z) * f,
        IbDagger => (1.0 + z) * f,
        Z => z * f,
        Dm => df,
        DmDagger => ((1.0 + z) * a - (1.0 - z) * b) * f - (1.0 - z * z) * df,
        Ds => b * f + (1.0 + z) * df,
        DsDagger => a * f - (1.0 - z) * df,
    }
}

/// Max absolute entry error of the assembled banded operator against
/// projection, over `n ≤ n_max` and every output row up to `n_max + 2`.
pub fn max_error(kind: JacobiOperatorKind, n_max: usize, src: JacobiParams) -> f64 {
    let op = BandedJacobiOperator::new(kind, n_max, src).unwrap();
    let dst = op.dst;
    let rows = n_max + 3;
    let rule = gauss_jacobi(n_max + 8, dst).unwrap();
    let mut worst = 0.0f64;
    for j in 0..rows {
        let h = rule.integrate(|z| jacobi_explicit(j, dst.a, dst.b, z).0.powi(2));
        for n in 0..=n_max {
            let proj = rule.integrate(|z| {
                let (f, df) = jacobi_explicit(n, src.a, src.b, z);
                jacobi_explicit(j, dst.a, dst.b, z).0 * action(kind, src.a, src.b, z, f, df)
            }) / h;
            let got = if j < op.n_rows() { op.get(j, n) } else { 0.0 };
            worst = worst.max((got - proj).abs());
        }
    }
    worst
}

pub const PARAMS: [(f64, f64); 6] = [(0.0, 0.0), (-0.5, -0.5), (1.0, 1.0), (0.5, 1.5), (2.0, 0.5), (3.5, 6.0)];

/// Every kind at every parameter pair with a valid destination.
/// Returns the worst error and the number of cases.
pub fn suite(n_max: usize) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in JacobiOperatorKind::ALL {
        for (a, b) in PARAMS {
            let src = JacobiParams::new(a, b).unwrap();
            if kind.dst(src).validate().is_err() {
                continue;
            }
            worst = worst.max(max_error(kind, n_max, src));
            cases += 1;
        }
    }
    (worst, cases)
}
