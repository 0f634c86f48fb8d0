//! Post-hoc physical residuals of computed eigenvectors.

use num_complex::Complex64;
use spherinder_core::basis::{
    cylindrical_from_spinor, cylindrical_to_cartesian, eval_field, eval_vector, spinor_from_cylindrical, Truncation,
};
use spherinder_core::operators::{calculus_operator, Calculus};
use spherinder_core::problems::{GeneralizedEVP, ProblemKind, RecoveredFields};
use spherinder_core::{SpectralField, SpherinderPoint, Spin, SpinVectorField};

use crate::error::{Error, Result};
use crate::io::meridional_grid;
use crate::solve::EigenSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `‖∇·u‖ / ‖u‖` on coefficients
    Divergence,
    /// boundary values over the interior maximum: `u·r̂` for the inviscid
    /// problem, `|u|` and `ϑ` for no-slip, `f` for Bessel
    Boundary,
    /// spin components against the Cartesian round trip
    SpinRoundtrip,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Divergence => "divergence",
            Check::Boundary => "boundary",
            Check::SpinRoundtrip => "spin_roundtrip",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Check::Divergence, Check::Boundary, Check::SpinRoundtrip].into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check: Check,
    /// one entry per eigenvector
    pub per_mode: Vec<f64>,
    pub max_residual: f64,
    pub threshold: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub modes: usize,
    pub eigen_residual: f64,
    pub checks: Vec<CheckResult>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, check: Check) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == check)
    }
}

fn coeff_norm(u: &SpinVectorField) -> f64 {
    (u.plus.norm().powi(2) + u.minus.norm().powi(2) + u.zero.norm().powi(2)).sqrt()
}

fn div_op(s: Spin) -> Calculus {
    match s {
        Spin::Plus => Calculus::DivPlus,
        Spin::Minus => Calculus::DivMinus,
        Spin::Zero => Calculus::DivZero,
    }
}

pub fn divergence_residual(u: &SpinVectorField) -> Result<f64> {
    let comps = [&u.plus, &u.minus, &u.zero];
    let l = comps.iter().map(|c| c.tag.trunc.l_count).max().unwrap_or(0);
    let n = comps.iter().map(|c| c.tag.trunc.n_max).max().unwrap_or(0);
    let cod = Truncation::new(l + 1, n + 1)?;
    let mut acc: Option<SpectralField> = None;
    for c in comps {
        let t = c.tag;
        let d = calculus_operator(div_op(t.sigma), t.m, t.alpha, t.trunc, cod)?.apply(c)?;
        acc = Some(match acc {
            None => d,
            Some(mut a) => {
                for (x, y) in a.coeffs.iter_mut().zip(&d.coeffs) {
                    *x += y;
                }
                a
            }
        });
    }
    let scale = coeff_norm(u);
    Ok(acc.map_or(0.0, |a| a.norm()) / if scale > 0.0 { scale } else { 1.0 })
}

fn boundary_points(n: usize) -> Result<Vec<SpherinderPoint>> {
    let mut out = Vec::new();
    for p in meridional_grid(n, 1, 0.0)? {
        out.push(SpherinderPoint::new(p.s, 0.0, 1.0)?);
        out.push(SpherinderPoint::new(p.s, 0.0, -1.0)?);
    }
    out.push(SpherinderPoint::new(1.0, 0.0, 0.0)?);
    Ok(out)
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn relative(boundary: f64, interior: f64) -> f64 {
    if interior > 0.0 {
        boundary / interior
    } else {
        boundary
    }
}

pub fn boundary_residual(kind: ProblemKind, fields: &RecoveredFields, resolution: usize) -> Result<f64> {
    let edge = boundary_points(resolution)?;
    // only normalizes the boundary values, a moderate grid is enough
    let n_in = resolution.min(64);
    let inside = meridional_grid(n_in, n_in, 0.0)?;
    match (&fields.velocity, kind) {
        (Some(u), ProblemKind::Inertial) => {
            let radial = |pts: &[SpherinderPoint]| -> Vec<Complex64> {
                eval_vector(u, pts).iter().zip(pts).map(|(c, p)| c[0] * p.s + c[2] * p.z()).collect()
            };
            let magnitude: Vec<Complex64> = eval_vector(u, &inside)
                .iter()
                .map(|c| Complex64::new((c[0].norm_sqr() + c[1].norm_sqr() + c[2].norm_sqr()).sqrt(), 0.0))
                .collect();
            Ok(relative(max_abs(&radial(&edge)), max_abs(&magnitude)))
        }
        (Some(u), _) => {
            let comps = [&u.plus, &u.minus, &u.zero];
            let mut worst = 0.0f64;
            let mut peak = 0.0f64;
            for c in comps {
                worst = worst.max(max_abs(&eval_field(c, &edge)));
                peak = peak.max(max_abs(&eval_field(c, &inside)));
            }
            let mut r = relative(worst, peak);
            if let Some(t) = &fields.temperature {
                r = r.max(relative(max_abs(&eval_field(t, &edge)), max_abs(&eval_field(t, &inside))));
            }
            Ok(r)
        }
        (None, _) => {
            let f = &fields.scalar;
            Ok(relative(max_abs(&eval_field(f, &edge)), max_abs(&eval_field(f, &inside))))
        }
    }
}

/// Spin components evaluated directly against the same components rebuilt
/// from Cartesian values rotated back to the local frame.
pub fn spin_roundtrip_residual(u: &SpinVectorField, resolution: usize) -> Result<f64> {
    let mut pts = meridional_grid(resolution, resolution, 0.7)?;
    pts.extend(meridional_grid(resolution, resolution, 2.3)?);
    let cyl = eval_vector(u, &pts);
    let direct = [eval_field(&u.plus, &pts), eval_field(&u.minus, &pts), eval_field(&u.zero, &pts)];
    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    for (i, p) in pts.iter().enumerate() {
        let cart = cylindrical_to_cartesian(p.phi, cyl[i]);
        let (c, s) = (p.phi.cos(), p.phi.sin());
        let us = cart[0] * c + cart[1] * s;
        let up = -cart[0] * s + cart[1] * c;
        let (a, b, z) = spinor_from_cylindrical(us, up, cart[2]);
        let back = cylindrical_from_spinor(a, b, z);
        let diffs = [a - direct[0][i], b - direct[1][i], z - direct[2][i]];
        worst = diffs.iter().map(|d| d.norm()).fold(worst, f64::max);
        worst = worst.max((back.0 - cyl[i][0]).norm()).max((back.1 - cyl[i][1]).norm());
        peak = direct.iter().map(|d| d[i].norm()).fold(peak, f64::max);
    }
    Ok(relative(worst, peak))
}

/// Physical residuals for every eigenvector in `solution`. A check that
/// does not apply to the problem (no velocity) reports zero.
pub fn residual_report(
    evp: &GeneralizedEVP,
    solution: &EigenSolution,
    checks: &[(Check, Option<f64>)],
) -> Result<ResidualReport> {
    let vectors = solution
        .eigenvectors
        .as_ref()
        .ok_or_else(|| Error::Usage("residual report needs eigenvectors".into()))?;
    let resolution = 2 * (evp.trunc.l_count + evp.trunc.n_max) + 8;
    let recovered: Vec<RecoveredFields> = vectors.iter().map(|x| evp.recover(x)).collect::<std::result::Result<_, _>>()?;
    let mut out = Vec::new();
    for &(check, threshold) in checks {
        let per_mode = recovered
            .iter()
            .map(|f| match (check, &f.velocity) {
                (Check::Divergence, Some(u)) => divergence_residual(u),
                (Check::SpinRoundtrip, Some(u)) => spin_roundtrip_residual(u, 6),
                (Check::Boundary, _) => boundary_residual(evp.kind, f, resolution),
                _ => Ok(0.0),
            })
            .collect::<Result<Vec<f64>>>()?;
        let max_residual = per_mode.iter().copied().fold(0.0, f64::max);
        let passed = threshold.map_or(true, |t| max_residual < t);
        out.push(CheckResult { check, per_mode, max_residual, threshold, passed });
    }
    Ok(ResidualReport { modes: vectors.len(), eigen_residual: solution.max_residual(), checks: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spherinder_core::basis::project_scalar;
    use spherinder_core::SpaceTag;

    fn project(m: u32, s: Spin, t: Truncation, f: impl Fn(&SpherinderPoint) -> Complex64) -> SpectralField {
        let tag = SpaceTag::new(m, s, 1.0, t).unwrap();
        project_scalar(&tag, 16, 16, f).unwrap()
    }

    #[test]
    fn solid_body_rotation_is_solenoidal() {
        // u = ê_z × r⃗ = s ê_φ, axisymmetric, u_± = ±i s/√2
        let t = Truncation::new(4, 4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = project(0, Spin::Plus, t, |p| Complex64::new(0.0, p.s * h));
        let minus = project(0, Spin::Minus, t, |p| Complex64::new(0.0, -p.s * h));
        let zero = SpectralField::zeros(SpaceTag::new(0, Spin::Zero, 1.0, t).unwrap());
        let u = SpinVectorField::new(plus, minus, zero).unwrap();
        assert!(divergence_residual(&u).unwrap() < 1e-12);
        assert!(spin_roundtrip_residual(&u, 5).unwrap() < 1e-12);
    }

    #[test]
    fn names_round_trip() {
        for c in [Check::Divergence, Check::Boundary, Check::SpinRoundtrip] {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
    }
}
