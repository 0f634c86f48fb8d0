use alloc::vec;

use super::assemble::{assemble, Term};
use super::AssembledOperator;
use crate::basis::{one_minus_eta2_coefficients, vertical_coefficients, SpaceTag, Spin, Truncation};
use crate::error::Result;
use crate::jacobi::JacobiOperatorKind::*;
use crate::math::FRAC_1_SQRT_2;

/// `R^σ`: component `σ` of `r⃗ f` for a scalar `f`. Input σ = 0, output σ,
/// same α. Output modes beyond `cod` are dropped.
pub fn radial_multiply_component(m: u32, sigma: Spin, alpha: f64, dom: Truncation, cod: Truncation) -> Result<AssembledOperator> {
    let domain = SpaceTag::new(m, Spin::Zero, alpha, dom)?;
    let codomain = SpaceTag::new(m, sigma, alpha, cod)?;
    let name = match sigma {
        Spin::Plus => "R+",
        Spin::Minus => "R-",
        Spin::Zero => "R0",
    };
    let raising = sigma == Spin::Plus || (sigma == Spin::Minus && m == 0);
    assemble(domain, codomain, name, |l| {
        Ok(match sigma {
            Spin::Zero => r0_terms(l, alpha)?,
            _ if raising => vec![Term::real(0, 0.5, Ib)],
            _ => vec![Term::real(0, 0.5, IbDagger)],
        })
    })
}

/// `E^σ`: `r⃗ · (ê_σ u_σ)` for one spin component, into σ = 0 at the same α.
pub fn radial_component_part(m: u32, sigma: Spin, alpha: f64, dom: Truncation, cod: Truncation) -> Result<AssembledOperator> {
    let domain = SpaceTag::new(m, sigma, alpha, dom)?;
    let codomain = SpaceTag::new(m, Spin::Zero, alpha, cod)?;
    let name = match sigma {
        Spin::Plus => "E-",
        Spin::Minus => "E+",
        Spin::Zero => "E0",
    };
    // the b = |m+σ| → m move: lowering from m+1, raising from m-1
    let lowering = sigma == Spin::Plus || (sigma == Spin::Minus && m == 0);
    assemble(domain, codomain, name, |l| {
        Ok(match sigma {
            Spin::Zero => r0_terms(l, alpha)?,
            _ if lowering => vec![Term::real(0, 0.5, IbDagger)],
            _ => vec![Term::real(0, 0.5, Ib)],
        })
    })
}

fn r0_terms(l: usize, alpha: f64) -> Result<alloc::vec::Vec<Term>> {
    let v = vertical_coefficients(l, alpha)?;
    Ok(vec![
        Term::real(1, FRAC_1_SQRT_2 * v.c, Ia),
        Term::real(-1, FRAC_1_SQRT_2 * v.d, IaDagger),
    ])
}

/// `(R^+, R^-, R^0)` with the codomain truncation equal to the input one.
pub fn radial_multiply(m: u32, alpha: f64, trunc: Truncation) -> Result<(AssembledOperator, AssembledOperator, AssembledOperator)> {
    Ok((
        radial_multiply_component(m, Spin::Plus, alpha, trunc, trunc)?,
        radial_multiply_component(m, Spin::Minus, alpha, trunc, trunc)?,
        radial_multiply_component(m, Spin::Zero, alpha, trunc, trunc)?,
    ))
}

/// `(E^- on σ=+, E^+ on σ=-, E^0)` into a common scalar codomain.
pub fn radial_component(m: u32, alpha: f64, trunc: Truncation) -> Result<(AssembledOperator, AssembledOperator, AssembledOperator)> {
    Ok((
        radial_component_part(m, Spin::Plus, alpha, trunc, trunc)?,
        radial_component_part(m, Spin::Minus, alpha, trunc, trunc)?,
        radial_component_part(m, Spin::Zero, alpha, trunc, trunc)?,
    ))
}

/// `S`: multiplication by `1 - r²`, `H^α → H^{α-1}`, mapping `(L, N)` exactly
/// into `(L+2, N+1)`.
pub fn one_minus_r2(m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let domain = SpaceTag::new(m, sigma, alpha, trunc)?;
    let out = Truncation::new(trunc.l_count + 2, trunc.n_max + 1)?;
    let codomain = SpaceTag::new(m, sigma, alpha - 1.0, out)?;
    one_minus_eta2_coefficients(0, alpha)?;
    assemble(domain, codomain, "S", |l| {
        let (a, b) = one_minus_eta2_coefficients(l, alpha)?;
        Ok(vec![Term::real(0, 0.5 * a, IaDagger), Term::real(2, 0.5 * b, Ia)])
    })
}

/// `I_α: H^α → H^{α+1}`, exact under triangular truncation.
pub fn conversion(m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let domain = SpaceTag::new(m, sigma, alpha, trunc)?;
    let codomain = domain.with_alpha(alpha + 1.0);
    assemble(domain, codomain, "I", |l| {
        let v = vertical_coefficients(l, alpha)?;
        Ok(vec![Term::real(0, v.gamma, Ia), Term::real(-2, -v.delta, IaDagger)])
    })
}

/// `I_α^power: H^α → H^{α+power}`; `power = 0` is the identity.
pub fn conversion_power(m: u32, sigma: Spin, alpha: f64, trunc: Truncation, power: u32) -> Result<AssembledOperator> {
    let mut op = AssembledOperator::identity(SpaceTag::new(m, sigma, alpha, trunc)?);
    for j in 0..power {
        op = conversion(m, sigma, alpha + j as f64, trunc)?.compose(&op)?;
    }
    Ok(op.renamed(alloc::format!("I^{power}")))
}
