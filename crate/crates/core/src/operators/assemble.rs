use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::AssembledOperator;
use crate::basis::{normalization, SpaceTag};
use crate::error::{Error, Result};
use crate::jacobi::{ln_norm_unchecked, JacobiOperatorKind};
use crate::math::{abs, exp, ln};
use crate::sparse::CooMatrix;

/// One piece of a recipe: the input `(l, ·)` block maps to `(l + dl, ·)` through
/// the radial Jacobi operator `kind`, scaled by `coeff` (classical normalization).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub dl: i64,
    pub coeff: Complex64,
    pub kind: JacobiOperatorKind,
}

impl Term {
    pub fn new(dl: i64, coeff: Complex64, kind: JacobiOperatorKind) -> Self {
        Self { dl, coeff, kind }
    }

    pub fn real(dl: i64, coeff: f64, kind: JacobiOperatorKind) -> Self {
        Self::new(dl, Complex64::new(coeff, 0.0), kind)
    }
}

/// Build the orthonormal-basis matrix of a recipe. Output modes outside the
/// codomain truncation are dropped.
pub fn assemble(
    domain: SpaceTag,
    codomain: SpaceTag,
    name: &str,
    recipe: impl Fn(usize) -> Result<Vec<Term>>,
) -> Result<AssembledOperator> {
    if domain.m != codomain.m {
        return Err(Error::TagMismatch { expected: domain.label(), found: codomain.label() });
    }
    let (din, dout) = (domain.trunc, codomain.trunc);
    let ln_norm_ratio = ln(normalization(codomain.alpha)) - ln(normalization(domain.alpha));
    let vin = domain.vertical_params();
    let vout = codomain.vertical_params();
    let mut matrix = CooMatrix::new(codomain.size(), domain.size());

    for l in 0..din.l_count {
        let n_in = din.radial_count(l);
        let p_in = domain.radial_params(l);
        let ln_hv_in = ln_norm_unchecked(l, vin);
        for term in recipe(l)? {
            let lo = l as i64 + term.dl;
            if lo < 0 || lo as usize >= dout.l_count || term.coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            let lo = lo as usize;
            let p_out = codomain.radial_params(lo);
            let expect = term.kind.dst(p_in);
            if abs(expect.a - p_out.a) > 1e-12 || abs(expect.b - p_out.b) > 1e-12 {
                return Err(Error::Assembly(format!(
                    "{name}: {:?} maps ({}, {}) to ({}, {}) but the codomain block l={lo} has ({}, {})",
                    term.kind, p_in.a, p_in.b, expect.a, expect.b, p_out.a, p_out.b
                )));
            }
            p_in.validate()?;
            p_out.validate()?;
            let n_out = dout.radial_count(lo);
            let ln_hv_out = ln_norm_unchecked(lo, vout);
            let base_in = din.offset(l);
            let base_out = dout.offset(lo);
            for k in 0..n_in {
                let ln_hr_in = ln_norm_unchecked(k, p_in);
                for (ko, v) in term.kind.column(k, p_in).iter() {
                    if ko >= n_out || v == 0.0 {
                        continue;
                    }
                    let ln_hr_out = ln_norm_unchecked(ko, p_out);
                    let scale = exp(ln_norm_ratio + 0.5 * (ln_hv_out + ln_hr_out - ln_hv_in - ln_hr_in));
                    matrix.push(base_out + ko, base_in + k, term.coeff * (v * scale));
                }
            }
        }
    }
    matrix.canonicalize();
    AssembledOperator::new(matrix, domain, codomain, name)
}
