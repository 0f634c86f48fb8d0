use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::radial::conversion_power;
use super::AssembledOperator;
use crate::basis::{normalization, SpaceTag, Spin, Truncation};
use crate::error::{Error, Result};
use crate::jacobi::{ln_norm_unchecked, value_at_one, JacobiOperatorKind, JacobiParams};
use crate::math::{exp, floor};
use crate::sparse::CooMatrix;

/// Rows evaluating a field on the sphere `r = 1`.
///
/// On the boundary `η = ±1`, and the trace splits into an even-`l` part and
/// `(1-t)^{1/2}` times an odd-`l` part, each a polynomial of degree `N-1` in
/// `t`. Every block is moved to a common Jacobi family by `l/2` applications
/// of `I_a†` followed by `I_a` raisings. Rows `0..N` are the orthonormal
/// coefficients of the even trace, rows `N..2N` those of the odd trace.
///
/// The codomain is labelled with a two-row truncation `(2, N)`: `l = 0` holds
/// the even rows and `l = 1` the odd ones.
pub fn boundary_rows(m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let domain = SpaceTag::new(m, sigma, alpha, trunc)?;
    let n = trunc.n_max;
    let codomain = domain.with_trunc(Truncation::new(2, n)?);
    let mut matrix = CooMatrix::new(2 * n, domain.size());
    if domain.size() == 0 {
        return AssembledOperator::new(matrix, domain, codomain, "B");
    }

    let b = domain.b() as f64;
    let lowered = |l: usize| l as f64 + alpha + 0.5 - (l / 2) as f64;
    let mut target = [f64::NEG_INFINITY; 2];
    for l in 0..trunc.l_count {
        target[l % 2] = target[l % 2].max(lowered(l));
    }
    let vertical = domain.vertical_params();
    let inv_norm = 1.0 / normalization(alpha);

    for l in 0..trunc.l_count {
        let parity = l % 2;
        let n_l = trunc.radial_count(l);
        let p_in = domain.radial_params(l);
        let lowers = l / 2;
        let raises = floor(target[parity] - lowered(l) + 0.5) as usize;
        let endpoint = value_at_one(l, vertical) * exp(-0.5 * ln_norm_unchecked(l, vertical)) * inv_norm;
        let p_target = JacobiParams { a: target[parity], b };
        for k in 0..n_l {
            // classical coefficients of the orthonormal input p_k
            let mut coeffs = vec![0.0; n];
            coeffs[k] = exp(-0.5 * ln_norm_unchecked(k, p_in));
            let mut p = p_in;
            for _ in 0..lowers {
                coeffs = apply_classical(JacobiOperatorKind::IaDagger, &coeffs, p);
                p = p.shifted(-1.0, 0.0);
            }
            for _ in 0..raises {
                coeffs = apply_classical(JacobiOperatorKind::Ia, &coeffs, p);
                p = p.shifted(1.0, 0.0);
            }
            debug_assert!((p.a - p_target.a).abs() < 1e-12);
            for (j, c) in coeffs.iter().enumerate() {
                if *c != 0.0 {
                    let v = c * exp(0.5 * ln_norm_unchecked(j, p_target)) * endpoint;
                    matrix.push(parity * n + j, trunc.offset(l) + k, Complex64::new(v, 0.0));
                }
            }
        }
    }
    matrix.canonicalize();
    AssembledOperator::new(matrix, domain, codomain, "B")
}

fn apply_classical(kind: JacobiOperatorKind, x: &[f64], p: JacobiParams) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for (n, &v) in x.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        for (r, w) in kind.column(n, p).iter() {
            // degrees beyond the trace polynomial cannot occur
            if r < y.len() {
                y[r] += v * w;
            }
        }
    }
    y
}

/// Flat indices of the tau modes of a truncation: the highest radial mode of
/// every `l` plus every mode of the two highest `l`. There are `2N` of them.
pub fn tau_indices(trunc: &Truncation) -> Vec<usize> {
    trunc
        .modes()
        .enumerate()
        .filter(|&(_, (l, k))| k + 1 == trunc.radial_count(l) || l + 2 >= trunc.l_count)
        .map(|(i, _)| i)
        .collect()
}

/// Indices of `outer` that are not modes of `inner`.
pub fn galerkin_tau_indices(outer: &Truncation, inner: &Truncation) -> Vec<usize> {
    outer
        .modes()
        .enumerate()
        .filter(|&(_, (l, k))| inner.index(l, k).is_none())
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauProjection {
    Identity,
    /// `I_α^power` from `α - power`.
    Conversion(u32),
}

/// Where tau columns come from and which modes they occupy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauSpec {
    pub projection: TauProjection,
    /// For Galerkin systems, the truncation whose complement in the codomain
    /// holds the tau modes. `None` selects [`tau_indices`].
    pub galerkin_inner: Option<Truncation>,
}

impl TauSpec {
    pub fn standard(projection: TauProjection) -> Self {
        Self { projection, galerkin_inner: None }
    }

    pub fn galerkin(projection: TauProjection, inner: Truncation) -> Self {
        Self { projection, galerkin_inner: Some(inner) }
    }
}

/// Columns of the projection operator into `codomain` at the tau modes.
pub fn tau_columns(spec: &TauSpec, codomain: &SpaceTag) -> Result<CooMatrix> {
    let power = match spec.projection {
        TauProjection::Identity => 0,
        TauProjection::Conversion(p) => p,
    };
    let src_alpha = codomain.alpha - power as f64;
    if src_alpha <= -1.0 {
        return Err(Error::Assembly(alloc::format!(
            "tau projection I^{power} into alpha = {} needs a source below -1",
            codomain.alpha
        )));
    }
    let proj = conversion_power(codomain.m, codomain.sigma, src_alpha, codomain.trunc, power)?;
    if proj.codomain != *codomain {
        return Err(Error::TagMismatch { expected: codomain.label(), found: proj.codomain.label() });
    }
    let cols = match spec.galerkin_inner {
        None => tau_indices(&codomain.trunc),
        Some(inner) => {
            if !codomain.trunc.contains(&inner) {
                return Err(Error::Assembly("galerkin inner truncation exceeds the codomain".into()));
            }
            galerkin_tau_indices(&codomain.trunc, &inner)
        }
    };
    Ok(proj.matrix.select_columns(&cols))
}
