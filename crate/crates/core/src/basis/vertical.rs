use crate::error::{Error, Result};
use crate::jacobi::{JacobiOperatorKind, JacobiParams};

/// Classical coefficients of the symmetric vertical family `P_l^{(α,α)}(η)`:
///
/// - `P_l^{(α)} = γ P_l^{(α+1)} - δ P_{l-2}^{(α+1)}`
/// - `d/dη P_l^{(α)} = β P_{l-1}^{(α+1)}`
/// - `η P_l^{(α)} = c P_{l+1}^{(α)} + d P_{l-1}^{(α)}`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalCoefficients {
    pub gamma: f64,
    pub delta: f64,
    pub beta: f64,
    pub c: f64,
    pub d: f64,
}

pub fn vertical_coefficients(l: usize, alpha: f64) -> Result<VerticalCoefficients> {
    let p = JacobiParams::new(alpha, alpha)?;
    let mut raised = [0.0; 3];
    let pa = p.shifted(1.0, 0.0);
    for (j, v) in JacobiOperatorKind::Ia.column(l, p).iter() {
        for (i, w) in JacobiOperatorKind::Ib.column(j, pa).iter() {
            raised[l - i] += v * w;
        }
    }
    let z = JacobiOperatorKind::Z.column(l, p);
    let beta = JacobiOperatorKind::Dm.column(l, p).get(l.wrapping_sub(1));
    Ok(VerticalCoefficients {
        gamma: raised[0],
        delta: if l >= 2 { -raised[2] } else { 0.0 },
        beta: if l == 0 { 0.0 } else { beta },
        c: z.get(l + 1),
        d: if l == 0 { 0.0 } else { z.get(l - 1) },
    })
}

/// `(1 - η²) P_l^{(α,α)} = A P_l^{(α-1,α-1)} + B P_{l+2}^{(α-1,α-1)}`,
/// returned as `(A, B)`. Needs `α > 0`.
pub fn one_minus_eta2_coefficients(l: usize, alpha: f64) -> Result<(f64, f64)> {
    let p = JacobiParams::new(alpha, alpha)?;
    if alpha - 1.0 <= -1.0 {
        return Err(Error::ParameterDomain { a: alpha - 1.0, b: alpha - 1.0 });
    }
    let mut lowered = [0.0; 3];
    let pb = p.shifted(0.0, -1.0);
    for (j, v) in JacobiOperatorKind::IbDagger.column(l, p).iter() {
        for (i, w) in JacobiOperatorKind::IaDagger.column(j, pb).iter() {
            lowered[i - l] += v * w;
        }
    }
    Ok((lowered[0], lowered[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::eval_jacobi;

    #[test]
    fn low_degree_values() {
        let v = vertical_coefficients(0, 0.7).unwrap();
        assert_eq!((v.delta, v.beta, v.d), (0.0, 0.0, 0.0));
        assert!((v.gamma - 1.0).abs() < 1e-15);
        let v = vertical_coefficients(1, 0.0).unwrap();
        assert!((v.gamma - 0.5).abs() < 1e-15);
        assert_eq!(v.delta, 0.0);
        let v = vertical_coefficients(0, 0.0).unwrap();
        assert!((v.c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn defining_relations_pointwise() {
        for &alpha in &[0.0, -0.5, 1.0, 2.5] {
            let p = JacobiParams::new(alpha, alpha).unwrap();
            let q = p.shifted(1.0, 1.0);
            for l in 0..10 {
                let v = vertical_coefficients(l, alpha).unwrap();
                for &eta in &[-0.8, -0.1, 0.33, 0.9] {
                    let at = |pp, n: i64| if n < 0 { 0.0 } else { eval_jacobi(n as usize, pp, eta).unwrap() };
                    let li = l as i64;
                    let lhs = at(p, li);
                    let rhs = v.gamma * at(q, li) - v.delta * at(q, li - 2);
                    assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
                    let dl = crate::jacobi::eval_jacobi_derivative(l, p, eta).unwrap();
                    assert!((dl - v.beta * at(q, li - 1)).abs() < 1e-11 * dl.abs().max(1.0));
                    let zl = eta * lhs;
                    let rhs = v.c * at(p, li + 1) + v.d * at(p, li - 1);
                    assert!((zl - rhs).abs() < 1e-12 * zl.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn one_minus_eta2() {
        for &alpha in &[0.5, 1.0, 2.0] {
            let p = JacobiParams::new(alpha, alpha).unwrap();
            let q = p.shifted(-1.0, -1.0);
            for l in 0..8 {
                let (a, b) = one_minus_eta2_coefficients(l, alpha).unwrap();
                for &eta in &[-0.6, 0.25, 0.95] {
                    let lhs = (1.0 - eta * eta) * eval_jacobi(l, p, eta).unwrap();
                    let rhs = a * eval_jacobi(l, q, eta).unwrap() + b * eval_jacobi(l + 2, q, eta).unwrap();
                    assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
                }
            }
        }
        assert!(one_minus_eta2_coefficients(2, 0.0).is_err());
    }
}
