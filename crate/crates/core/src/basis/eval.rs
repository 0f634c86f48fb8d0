use alloc::vec::Vec;

use num_complex::Complex64;

use super::spinor::cylindrical_from_spinor;
use super::{SpaceTag, SpectralField, SpherinderPoint, SpinVectorField};
use crate::error::{Error, Result};
use crate::jacobi::{eval_jacobi_all, eval_orthonormal_all, ln_norm_unchecked, recurrence};
use crate::math::exp;
use crate::math::{powf, powi, sqrt, PI};

/// `N_α = sqrt(2π / 2^{2 + α + 1/2})`
pub fn normalization(alpha: f64) -> f64 {
    sqrt(2.0 * PI / powf(2.0, 2.5 + alpha))
}

struct PointFactors {
    phase: Complex64,
    axis: f64,
    equator: f64,
    t: f64,
    /// classical (unnormalized) vertical polynomials
    vertical: Vec<f64>,
}

fn factors(tag: &SpaceTag, p: &SpherinderPoint, l_max: usize) -> PointFactors {
    let s = p.s;
    let phase = Complex64::from_polar(1.0, tag.m as f64 * p.phi);
    // (1+t)^{1/2} = √2 s and (1-t)^{1/2} = √(2(1-s)(1+s))
    let axis = powi(crate::math::SQRT_2 * s, tag.b() as i32);
    let equator = sqrt(2.0 * (1.0 - s) * (1.0 + s));
    let vertical = eval_jacobi_all(l_max, tag.vertical_params(), p.eta);
    PointFactors { phase, axis, equator, t: p.t(), vertical }
}

/// One basis function at many points.
pub fn eval_basis(tag: &SpaceTag, l: usize, k: usize, points: &[SpherinderPoint]) -> Result<Vec<Complex64>> {
    if tag.trunc.index(l, k).is_none() {
        return Err(Error::IndexOutOfTruncation { l, k });
    }
    let norm = normalization(tag.alpha) * exp(0.5 * ln_norm_unchecked(l, tag.vertical_params()));
    Ok(points
        .iter()
        .map(|p| {
            let f = factors(tag, p, l);
            let radial = eval_orthonormal_all(k, tag.radial_params(l), f.t)[k];
            f.phase * (f.axis * powi(f.equator, l as i32) * f.vertical[l] * radial / norm)
        })
        .collect())
}

/// Σ F̂_{l,k} Ψ_{l,k} at each point.
pub fn eval_field(field: &SpectralField, points: &[SpherinderPoint]) -> Vec<Complex64> {
    let tag = &field.tag;
    let trunc = tag.trunc;
    let norm = normalization(tag.alpha);
    if trunc.size() == 0 {
        return alloc::vec![Complex64::new(0.0, 0.0); points.len()];
    }
    // orthonormal scaling folded into the coefficients once
    let mut scaled = field.coeffs.clone();
    for (i, (l, k)) in trunc.modes().enumerate() {
        let v = tag.vertical_params();
        scaled[i] *= exp(-0.5 * (ln_norm_unchecked(k, tag.radial_params(l)) + ln_norm_unchecked(l, v)));
    }
    points
        .iter()
        .map(|p| {
            let f = factors(tag, p, trunc.l_count - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut eq_pow = 1.0;
            for l in 0..trunc.l_count {
                let n = trunc.radial_count(l);
                let c = &scaled[trunc.offset(l)..trunc.offset(l) + n];
                let mut inner = Complex64::new(0.0, 0.0);
                recurrence(n - 1, tag.radial_params(l), f.t, |k, v| inner += c[k] * v);
                acc += inner * (eq_pow * f.vertical[l]);
                eq_pow *= f.equator;
            }
            f.phase * acc * (f.axis / norm)
        })
        .collect()
}

/// Cylindrical components `(u_s, u_φ, u_z)` of a spin-decomposed vector field.
pub fn eval_vector(field: &SpinVectorField, points: &[SpherinderPoint]) -> Vec<[Complex64; 3]> {
    let p = eval_field(&field.plus, points);
    let m = eval_field(&field.minus, points);
    let z = eval_field(&field.zero, points);
    (0..points.len())
        .map(|i| {
            let (u, v, w) = cylindrical_from_spinor(p[i], m[i], z[i]);
            [u, v, w]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{ball_quadrature, Spin, Truncation};

    fn tag(m: u32, sigma: Spin, alpha: f64, l: usize, n: usize) -> SpaceTag {
        SpaceTag::new(m, sigma, alpha, Truncation::new(l, n).unwrap()).unwrap()
    }

    #[test]
    fn gram_matrix_is_identity() {
        for &(m, sigma, alpha) in &[(2, Spin::Zero, 0.0), (0, Spin::Minus, 1.0), (1, Spin::Plus, -0.5)] {
            let tg = tag(m, sigma, alpha, 4, 4);
            let q = ball_quadrature(alpha, 12, 12).unwrap();
            let vals: Vec<Vec<Complex64>> =
                tg.trunc.modes().map(|(l, k)| eval_basis(&tg, l, k, &q.points).unwrap()).collect();
            for (i, a) in vals.iter().enumerate() {
                for (j, b) in vals.iter().enumerate() {
                    let g = q.integrate(|idx| a[idx].conj() * b[idx]);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - Complex64::new(want, 0.0)).norm() < 1e-11, "{i} {j} {g}");
                }
            }
        }
    }

    #[test]
    fn constant_mode_value() {
        let tg = tag(0, Spin::Zero, 0.0, 1, 1);
        let pts = [SpherinderPoint::new(0.3, 0.2, -0.4).unwrap(), SpherinderPoint::new(0.9, 4.0, 0.8).unwrap()];
        let v = eval_basis(&tg, 0, 0, &pts).unwrap();
        let h_v = crate::jacobi::jacobi_norm(0, tg.vertical_params()).unwrap();
        let h_r = crate::jacobi::jacobi_norm(0, tg.radial_params(0)).unwrap();
        let want = 1.0 / (normalization(0.0) * (h_v * h_r).sqrt());
        for x in v {
            assert!((x - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn vanishes_on_axis_for_positive_b() {
        let tg = tag(2, Spin::Minus, 0.0, 3, 3);
        let pts = [SpherinderPoint::new(0.0, 0.0, 0.3).unwrap()];
        for (l, k) in tg.trunc.modes() {
            assert_eq!(eval_basis(&tg, l, k, &pts).unwrap()[0], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn index_errors() {
        let tg = tag(0, Spin::Zero, 0.0, 4, 4);
        assert_eq!(eval_basis(&tg, 3, 3, &[]), Err(Error::IndexOutOfTruncation { l: 3, k: 3 }));
    }

    #[test]
    fn field_is_linear_in_basis() {
        let tg = tag(3, Spin::Plus, 1.0, 5, 4);
        let pts: Vec<_> = (0..7)
            .map(|i| SpherinderPoint::new(0.1 + 0.12 * i as f64, 0.4 * i as f64, -0.9 + 0.25 * i as f64).unwrap())
            .collect();
        let mut f = SpectralField::zeros(tg);
        assert!(eval_field(&f, &pts).iter().all(|v| v.norm() == 0.0));
        f.set(2, 1, Complex64::new(1.0, 0.0)).unwrap();
        let a = eval_field(&f, &pts);
        let b = eval_basis(&tg, 2, 1, &pts).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13 * y.norm().max(1.0));
        }
    }
}
