use faer::Mat;
use num_complex::Complex64;
use spherinder_core::CooMatrix;

use super::arnoldi::inverse_iteration;
use super::{normalize, relative_residual, EigenSolution, SolveMode, INFINITE_THRESHOLD};
use crate::error::{Error, Result};

fn is_real(m: &CooMatrix) -> bool {
    m.entries().iter().all(|e| e.2.im == 0.0)
}

/// All finite eigenpairs from a QZ decomposition, sorted by `|λ|`.
pub fn dense_full(l: &CooMatrix, m: &CooMatrix, tol: f64, vectors: bool) -> Result<EigenSolution> {
    let n = l.nrows();
    let gevd = if is_real(l) && is_real(m) {
        let fill = |a: &CooMatrix| {
            let mut d = Mat::<f64>::zeros(n, n);
            for &(r, c, v) in a.entries() {
                d[(r, c)] = v.re;
            }
            d
        };
        fill(l).generalized_eigen(fill(m))
    } else {
        let fill = |a: &CooMatrix| {
            let mut d = Mat::<Complex64>::zeros(n, n);
            for &(r, c, v) in a.entries() {
                d[(r, c)] = v;
            }
            d
        };
        fill(l).generalized_eigen(fill(m))
    }
    .map_err(|e| Error::Solver(format!("QZ failed: {e:?}")))?;

    let threshold = INFINITE_THRESHOLD * m.frobenius_norm();
    let (sa, sb, u) = (gevd.S_a(), gevd.S_b(), gevd.U());
    let mut pairs = Vec::new();
    let mut dropped = 0;
    for j in 0..n {
        let (a, b) = (sa[j], sb[j]);
        if b.norm() < threshold || !(a / b).is_finite() {
            dropped += 1;
            continue;
        }
        let lambda = a / b;
        let mut x: Vec<Complex64> = (0..n).map(|i| u[(i, j)]).collect();
        normalize(&mut x);
        if !x.iter().all(|c| c.is_finite()) {
            x = inverse_iteration(l, m, lambda)?;
        }
        let res = relative_residual(l, m, lambda, &x);
        pairs.push((lambda, x, res));
    }
    pairs.sort_by(|a, b| {
        a.0.norm().total_cmp(&b.0.norm()).then(a.0.re.total_cmp(&b.0.re)).then(a.0.im.total_cmp(&b.0.im))
    });
    let residuals: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    let converged = residuals.iter().all(|&r| r < tol);
    Ok(EigenSolution {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors: vectors.then(|| pairs.into_iter().map(|p| p.1).collect()),
        residuals,
        mode: SolveMode::DenseFull,
        tol,
        dropped,
        converged,
    })
}
