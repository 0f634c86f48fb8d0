//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, hypot};

/// Eigen-decomposition of a symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// `vectors[r][j]` is component `r` of eigenvector `j`, for the leading
    /// rows that were requested.
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalize the matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`), tracking the first `rows` components of
/// every eigenvector. `rows = 1` is all Golub-Welsch needs.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64], rows: usize) -> TridiagonalEigen {
    let n = diag.len();
    assert!(n == 0 || off.len() + 1 == n, "off-diagonal length must be n - 1");
    let rows = rows.min(n);
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(off);
    let mut z = vec![vec![0.0; n]; rows];
    for (r, row) in z.iter_mut().enumerate() {
        row[r] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = abs(d[m]) + abs(d[m + 1]);
                if abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { abs(r) } else { -abs(r) });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z
        .iter()
        .map(|row| order.iter().map(|&i| row[i]).collect())
        .collect();
    TridiagonalEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let eig = symmetric_tridiagonal_eigen(&[2.0, 2.0], &[1.0], 2);
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 3.0).abs() < 1e-15);
        let v = &eig.vectors;
        assert!((v[0][0].abs() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((v[0][0] + v[1][0]).abs() < 1e-15);
    }

    #[test]
    fn second_difference_matrix() {
        let n = 40;
        let eig = symmetric_tridiagonal_eigen(&vec![2.0; n], &vec![-1.0; n - 1], n);
        for (j, &lam) in eig.values.iter().enumerate() {
            let theta = (j + 1) as f64 * core::f64::consts::PI / (n + 1) as f64;
            assert!((lam - (2.0 - 2.0 * libm::cos(theta))).abs() < 1e-13);
        }
        // orthonormal columns
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n).map(|r| eig.vectors[r][a] * eig.vectors[r][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_and_single() {
        assert!(symmetric_tridiagonal_eigen(&[], &[], 1).values.is_empty());
        let eig = symmetric_tridiagonal_eigen(&[4.5], &[], 1);
        assert_eq!(eig.values, vec![4.5]);
        assert_eq!(eig.vectors, vec![vec![1.0]]);
    }
}
