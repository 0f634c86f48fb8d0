use alloc::vec::Vec;

use num_complex::Complex64;

use super::{eval_basis, SpaceTag, SpectralField, SpherinderPoint};
use crate::error::Result;
use crate::jacobi::{gauss_jacobi, JacobiParams};
use crate::math::{powf, sqrt, PI};

/// Tensor Gauss rule for `∫ f dμ_α` over the ball, for integrands that do not
/// depend on φ (products of a mode with the conjugate of the same `m`).
/// Points sit on `φ = 0`.
#[derive(Debug, Clone)]
pub struct BallQuadrature {
    pub alpha: f64,
    pub points: Vec<SpherinderPoint>,
    pub weights: Vec<f64>,
}

impl BallQuadrature {
    pub fn integrate(&self, mut f: impl FnMut(usize) -> Complex64) -> Complex64 {
        self.weights.iter().enumerate().map(|(i, &w)| f(i) * w).sum()
    }
}

/// Gauss-Jacobi `(α, α)` in η times `(α + 1/2, 0)` in `t = 2s² - 1`.
pub fn ball_quadrature(alpha: f64, n_eta: usize, n_t: usize) -> Result<BallQuadrature> {
    let qe = gauss_jacobi(n_eta, JacobiParams::new(alpha, alpha)?)?;
    let qt = gauss_jacobi(n_t, JacobiParams::new(alpha + 0.5, 0.0)?)?;
    let scale = 2.0 * PI / powf(2.0, 2.5 + alpha);
    let mut points = Vec::with_capacity(n_eta * n_t);
    let mut weights = Vec::with_capacity(n_eta * n_t);
    for (&t, &wt) in qt.nodes.iter().zip(&qt.weights) {
        let s = sqrt(0.5 * (1.0 + t));
        for (&eta, &we) in qe.nodes.iter().zip(&qe.weights) {
            points.push(SpherinderPoint { s, phi: 0.0, eta });
            weights.push(scale * wt * we);
        }
    }
    Ok(BallQuadrature { alpha, points, weights })
}

/// `F̂_{l,k} = <Ψ_{l,k}, f>` for a pointwise field `f ∝ e^{imφ}`, evaluated
/// on `φ = 0`.
pub fn project_scalar(
    tag: &SpaceTag,
    n_eta: usize,
    n_t: usize,
    f: impl Fn(&SpherinderPoint) -> Complex64,
) -> Result<SpectralField> {
    let q = ball_quadrature(tag.alpha, n_eta, n_t)?;
    let vals: Vec<Complex64> = q.points.iter().map(&f).collect();
    let mut out = SpectralField::zeros(*tag);
    for (i, (l, k)) in tag.trunc.modes().enumerate() {
        let psi = eval_basis(tag, l, k, &q.points)?;
        out.coeffs[i] = q.integrate(|j| psi[j].conj() * vals[j]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{eval_field, Spin, Truncation};

    #[test]
    fn r_squared_round_trip() {
        let tag = SpaceTag::new(0, Spin::Zero, 0.0, Truncation::new(4, 3).unwrap()).unwrap();
        let f = project_scalar(&tag, 10, 10, |p| {
            let z = p.z();
            Complex64::new(p.s * p.s + z * z, 0.0)
        })
        .unwrap();
        let pts: Vec<_> = (0..50)
            .map(|i| {
                let x = i as f64 / 50.0;
                SpherinderPoint::new((0.37 * i as f64).fract(), 6.0 * x, 2.0 * (0.61 * i as f64).fract() - 1.0).unwrap()
            })
            .collect();
        for (p, v) in pts.iter().zip(eval_field(&f, &pts)) {
            let want = p.s * p.s + p.eta * p.eta * (1.0 - p.s * p.s);
            assert!((v - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
    }
}
