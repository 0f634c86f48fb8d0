use alloc::vec;
use alloc::vec::Vec;

use super::{eval_jacobi_all, gauss_jacobi, jacobi_norm, JacobiOperatorKind, JacobiParams};
use crate::error::Result;

/// Pointwise actions understood by [`operator_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAction {
    Identity,
    MultiplyOneMinusZ,
    MultiplyOnePlusZ,
    MultiplyZ,
    Derivative,
    /// `(1+z)a - (1-z)b - (1-z^2) d/dz`
    DmDaggerForm,
    /// `b + (1+z) d/dz`
    DsForm,
    /// `a - (1-z) d/dz`
    DsDaggerForm,
}

impl OracleAction {
    /// The pointwise action that defines a banded operator kind.
    pub fn for_kind(kind: JacobiOperatorKind) -> Self {
        use JacobiOperatorKind::*;
        match kind {
            Ia | Ib | Identity => Self::Identity,
            IaDagger => Self::MultiplyOneMinusZ,
            IbDagger => Self::MultiplyOnePlusZ,
            Z => Self::MultiplyZ,
            Dm => Self::Derivative,
            DmDagger => Self::DmDaggerForm,
            Ds => Self::DsForm,
            DsDagger => Self::DsDaggerForm,
        }
    }
}

/// Dense matrix `(j, n) = <P_j^dst, action P_n^src>_dst / h_j^dst` for
/// `n = 0..=n_max` and `j = 0..=n_max + 1`, from a Gauss rule with
/// `n_max + 4` points. No band structure is assumed.
pub fn operator_oracle(
    action: OracleAction,
    n_max: usize,
    src: JacobiParams,
    dst: JacobiParams,
) -> Result<Vec<Vec<f64>>> {
    src.validate()?;
    dst.validate()?;
    let rows = n_max + 2;
    let rule = gauss_jacobi(n_max + 4, dst)?;
    let dsrc = src.shifted(1.0, 1.0);
    let mut out = vec![vec![0.0; n_max + 1]; rows];
    for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
        let pd = eval_jacobi_all(rows - 1, dst, z);
        let ps = eval_jacobi_all(n_max, src, z);
        let dps = eval_jacobi_all(n_max, dsrc, z);
        for n in 0..=n_max {
            let f = ps[n];
            let df = if n == 0 { 0.0 } else { 0.5 * (n as f64 + src.a + src.b + 1.0) * dps[n - 1] };
            let (a, b) = (src.a, src.b);
            let g = match action {
                OracleAction::Identity => f,
                OracleAction::MultiplyOneMinusZ => (1.0 - z) * f,
                OracleAction::MultiplyOnePlusZ => (1.0 + z) * f,
                OracleAction::MultiplyZ => z * f,
                OracleAction::Derivative => df,
                OracleAction::DmDaggerForm => ((1.0 + z) * a - (1.0 - z) * b) * f - (1.0 - z * z) * df,
                OracleAction::DsForm => b * f + (1.0 + z) * df,
                OracleAction::DsDaggerForm => a * f - (1.0 - z) * df,
            };
            for j in 0..rows {
                out[j][n] += w * pd[j] * g;
            }
        }
    }
    for (j, row) in out.iter_mut().enumerate() {
        let h = jacobi_norm(j, dst)?;
        for v in row.iter_mut() {
            *v /= h;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_reexpansion_is_identity() {
        let p = JacobiParams::new(1.5, 0.5).unwrap();
        let m = operator_oracle(OracleAction::Identity, 5, p, p).unwrap();
        for (j, row) in m.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                let want = if j == n { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn one_minus_z_example() {
        let m = operator_oracle(
            OracleAction::MultiplyOneMinusZ,
            1,
            JacobiParams::new(1.0, 0.0).unwrap(),
            JacobiParams::new(0.0, 0.0).unwrap(),
        )
        .unwrap();
        assert!((m[0][0] - 1.0).abs() < 1e-14);
        assert!((m[1][0] + 1.0).abs() < 1e-14);
        assert!(m[2][0].abs() < 1e-14);
    }
}
