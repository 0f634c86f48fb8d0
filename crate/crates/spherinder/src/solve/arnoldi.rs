use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use num_complex::Complex64;
use spherinder_core::CooMatrix;

use super::{norm, normalize, relative_residual, EigenSolution, SolveMode};
use crate::error::{Error, Result};

const MAX_BASIS: usize = 1200;

struct ShiftedSolver {
    lu: faer::sparse::linalg::solvers::Lu<usize, Complex64>,
    shift: Complex64,
}

impl ShiftedSolver {
    fn new(l: &CooMatrix, m: &CooMatrix, target: Complex64) -> Result<Self> {
        let n = l.nrows();
        let probe: Vec<Complex64> = start_vector(n);
        let mut last = String::new();
        for attempt in 0..4 {
            let shift = if attempt == 0 {
                target
            } else {
                let d = 1e-8 * (1.0 + target.norm()) * 10f64.powi(attempt - 1);
                target + Complex64::new(d, d)
            };
            let a = l.sub(&m.scale(shift)).map_err(Error::Core)?;
            let trips: Vec<_> = a.entries().iter().map(|&(r, c, v)| Triplet::new(r, c, v)).collect();
            let mat = SparseColMat::<usize, Complex64>::try_new_from_triplets(n, n, &trips)
                .map_err(|e| Error::Solver(format!("sparse assembly: {e:?}")))?;
            match mat.sp_lu() {
                Ok(lu) => {
                    let s = Self { lu, shift };
                    if s.solve(&probe).iter().all(|c| c.is_finite()) {
                        return Ok(s);
                    }
                    last = format!("non-finite solve at shift {shift}");
                }
                Err(e) => last = format!("{e:?}"),
            }
        }
        Err(Error::Solver(format!("factorization of L - σM failed near {target}: {last}")))
    }

    fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let mut b = Mat::<Complex64>::from_fn(rhs.len(), 1, |i, _| rhs[i]);
        self.lu.solve_in_place(b.as_mut());
        (0..rhs.len()).map(|i| b[(i, 0)]).collect()
    }
}

/// Fixed, dense start vector so runs are reproducible.
fn start_vector(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let x = i as f64 + 1.0;
            Complex64::new((0.7 * x).sin() + 1.3, (1.1 * x).cos() * 0.5)
        })
        .collect()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Arnoldi factorization of `op` with classical Gram-Schmidt and one
/// reorthogonalization pass. Returns the basis and the square Hessenberg
/// part; stops early on an invariant subspace.
fn arnoldi(op: &dyn Fn(&[Complex64]) -> Vec<Complex64>, v0: &[Complex64], p: usize) -> (Vec<Vec<Complex64>>, Mat<Complex64>) {
    let n0 = norm(v0);
    let mut basis = vec![v0.iter().map(|c| c / n0).collect::<Vec<_>>()];
    let mut h = Mat::<Complex64>::zeros(p + 1, p);
    let mut size = p;
    for j in 0..p {
        let mut w = op(&basis[j]);
        let scale = norm(&w);
        for _ in 0..2 {
            for (i, v) in basis.iter().enumerate() {
                let c = dot(v, &w);
                h[(i, j)] += c;
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk -= c * vk;
                }
            }
        }
        let beta = norm(&w);
        h[(j + 1, j)] = Complex64::new(beta, 0.0);
        if beta <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            size = j + 1;
            break;
        }
        if j + 1 < p {
            basis.push(w.iter().map(|c| c / beta).collect());
        }
    }
    basis.truncate(size);
    let square = Mat::<Complex64>::from_fn(size, size, |i, j| h[(i, j)]);
    (basis, square)
}

/// Eigenvector for a known eigenvalue by inverse iteration, for pairs whose
/// dense eigenvector came back non-finite.
pub(crate) fn inverse_iteration(l: &CooMatrix, m: &CooMatrix, lambda: Complex64) -> Result<Vec<Complex64>> {
    let d = 1e-10 * (1.0 + lambda.norm());
    let solver = ShiftedSolver::new(l, m, lambda + Complex64::new(d, d))?;
    let mut x = solver.solve(&m.apply(&start_vector(l.nrows())));
    for _ in 0..3 {
        normalize(&mut x);
        x = solver.solve(&m.apply(&x));
    }
    normalize(&mut x);
    if x.iter().all(|c| c.is_finite()) {
        Ok(x)
    } else {
        Err(Error::Solver(format!("inverse iteration at {lambda} did not produce a finite vector")))
    }
}

/// `count` eigenpairs nearest `target` from Arnoldi on `(L - σM)⁻¹M`.
/// The basis grows until every returned pair meets `tol` in the true
/// relative residual.
pub fn shift_invert(
    l: &CooMatrix,
    m: &CooMatrix,
    target: Complex64,
    count: usize,
    tol: f64,
    vectors: bool,
) -> Result<EigenSolution> {
    let n = l.nrows();
    let mode = SolveMode::ShiftInvert { target, count };
    if n == 0 || count == 0 {
        return Ok(EigenSolution {
            eigenvalues: vec![],
            eigenvectors: vectors.then(Vec::new),
            residuals: vec![],
            mode,
            tol,
            dropped: 0,
            converged: true,
        });
    }
    // a shift sitting on an eigenvalue swamps the Krylov space with one
    // direction; move it off and retry
    let mut best = None;
    for offset in [0.0, 1e-3, 3e-2] {
        let d = offset * (1.0 + target.norm());
        let sol = shift_invert_at(l, m, target, target + Complex64::new(d, d), count, tol, vectors)?;
        if sol.converged {
            return Ok(sol);
        }
        best = Some(sol);
    }
    Ok(best.expect("at least one attempt"))
}

fn shift_invert_at(
    l: &CooMatrix,
    m: &CooMatrix,
    target: Complex64,
    shift: Complex64,
    count: usize,
    tol: f64,
    vectors: bool,
) -> Result<EigenSolution> {
    let n = l.nrows();
    let mode = SolveMode::ShiftInvert { target, count };
    let solver = ShiftedSolver::new(l, m, shift)?;
    let op = |v: &[Complex64]| solver.solve(&m.apply(v));
    // start inside the range of the operator so constraint rows hold
    let v0 = op(&start_vector(n));
    let mut p = n.min((2 * count + 20).max(40));
    loop {
        let (basis, h) = arnoldi(&op, &v0, p);
        let k = basis.len();
        let eig = h.eigen().map_err(|e| Error::Solver(format!("Ritz eigenproblem: {e:?}")))?;
        let (s, u) = (eig.S(), eig.U());
        let mut order: Vec<usize> = (0..k).filter(|&i| s[i].norm() > 0.0).collect();
        order.sort_by(|&a, &b| s[b].norm().total_cmp(&s[a].norm()));
        order.truncate(count);
        let mut pairs = Vec::with_capacity(order.len());
        for &i in &order {
            let lambda = solver.shift + Complex64::new(1.0, 0.0) / s[i];
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            for (j, v) in basis.iter().enumerate() {
                let y = u[(j, i)];
                for (xk, vk) in x.iter_mut().zip(v) {
                    *xk += y * vk;
                }
            }
            normalize(&mut x);
            let res = relative_residual(l, m, lambda, &x);
            pairs.push((lambda, x, res));
        }
        let converged = pairs.len() == count.min(n) && pairs.iter().all(|p| p.2 < tol);
        let exhausted = k < p || p >= n || p >= MAX_BASIS;
        if converged || exhausted {
            pairs.sort_by(|a, b| (a.0 - target).norm().total_cmp(&(b.0 - target).norm()));
            let residuals: Vec<f64> = pairs.iter().map(|p| p.2).collect();
            let dropped = count.saturating_sub(pairs.len());
            return Ok(EigenSolution {
                eigenvalues: pairs.iter().map(|p| p.0).collect(),
                eigenvectors: vectors.then(|| pairs.into_iter().map(|p| p.1).collect()),
                residuals,
                mode,
                tol,
                dropped,
                converged,
            });
        }
        p = (2 * p).min(n).min(MAX_BASIS);
    }
}
