use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::assemble::{assemble, Term};
use super::AssembledOperator;
use crate::basis::{vertical_coefficients, SpaceTag, Spin, Truncation};
use crate::error::{Error, Result};
use crate::jacobi::JacobiOperatorKind::{self, *};
use crate::math::SQRT_2;

/// First-order operators. Naming follows the spin bookkeeping: gradients by
/// output spin, divergences by the spin change, curls as `C_{out}^{x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calculus {
    /// `G^+: σ 0 → +`
    GradPlus,
    /// `G^-: σ 0 → -`
    GradMinus,
    /// `G^0: σ 0 → 0`
    GradZero,
    /// `D^-: σ + → 0`
    DivPlus,
    /// `D^+: σ - → 0`
    DivMinus,
    /// `D^0: σ 0 → 0`
    DivZero,
    /// `C_+^0: σ + → +`
    CurlPlusPlus0,
    /// `C_-^0: σ - → -`
    CurlMinusMinus0,
    /// `C_0^+: σ - → 0`
    CurlZeroFromMinus,
    /// `C_0^-: σ + → 0`
    CurlZeroFromPlus,
    /// `C_-^-: σ 0 → -`
    CurlMinusFromZero,
    /// `C_+^+: σ 0 → +`
    CurlPlusFromZero,
}

impl Calculus {
    pub fn spins(self) -> (Spin, Spin) {
        use Calculus::*;
        match self {
            GradPlus => (Spin::Zero, Spin::Plus),
            GradMinus => (Spin::Zero, Spin::Minus),
            GradZero => (Spin::Zero, Spin::Zero),
            DivPlus => (Spin::Plus, Spin::Zero),
            DivMinus => (Spin::Minus, Spin::Zero),
            DivZero => (Spin::Zero, Spin::Zero),
            CurlPlusPlus0 => (Spin::Plus, Spin::Plus),
            CurlMinusMinus0 => (Spin::Minus, Spin::Minus),
            CurlZeroFromMinus => (Spin::Minus, Spin::Zero),
            CurlZeroFromPlus => (Spin::Plus, Spin::Zero),
            CurlMinusFromZero => (Spin::Zero, Spin::Minus),
            CurlPlusFromZero => (Spin::Zero, Spin::Plus),
        }
    }

    pub fn name(self) -> &'static str {
        use Calculus::*;
        match self {
            GradPlus => "G+",
            GradMinus => "G-",
            GradZero => "G0",
            DivPlus => "D-",
            DivMinus => "D+",
            DivZero => "D0",
            CurlPlusPlus0 => "C+0",
            CurlMinusMinus0 => "C-0",
            CurlZeroFromMinus => "C0+",
            CurlZeroFromPlus => "C0-",
            CurlMinusFromZero => "C--",
            CurlPlusFromZero => "C++",
        }
    }

    /// At `m = 0` the `σ = -1` family is stored with `b = 1`, the same
    /// functions as `σ = +1`; those operators reuse the spin-reversed recipe
    /// with the returned sign.
    fn mirrored(self) -> (Self, f64) {
        use Calculus::*;
        match self {
            GradMinus => (GradPlus, 1.0),
            DivMinus => (DivPlus, 1.0),
            CurlMinusMinus0 => (CurlPlusPlus0, -1.0),
            CurlZeroFromMinus => (CurlZeroFromPlus, -1.0),
            CurlMinusFromZero => (CurlPlusFromZero, -1.0),
            other => (other, 1.0),
        }
    }

    fn terms(self, l: usize, alpha: f64) -> Result<Vec<Term>> {
        use Calculus::*;
        let v = vertical_coefficients(l, alpha)?;
        let i = Complex64::new(0.0, 1.0);
        let (g, d) = (Complex64::new(2.0 * v.gamma, 0.0), Complex64::new(2.0 * v.delta, 0.0));
        let b0 = Complex64::new(SQRT_2 * v.beta, 0.0);
        let pair = |c: Complex64, k0: JacobiOperatorKind, k2: JacobiOperatorKind| {
            vec![Term::new(0, g * c, k0), Term::new(-2, d * c, k2)]
        };
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            GradPlus | DivMinus => pair(one, Dm, DsDagger),
            GradMinus | DivPlus => pair(one, Ds, DmDagger),
            GradZero | DivZero => vec![Term::new(-1, b0, Identity)],
            CurlPlusPlus0 => vec![Term::new(-1, i * b0, Identity)],
            CurlMinusMinus0 => vec![Term::new(-1, -i * b0, Identity)],
            CurlZeroFromMinus => pair(i, Dm, DsDagger),
            CurlZeroFromPlus => pair(-i, Ds, DmDagger),
            CurlMinusFromZero => pair(i, Ds, DmDagger),
            CurlPlusFromZero => pair(-i, Dm, DsDagger),
        })
    }
}

/// A first-order operator `H^α(m+σ_in) → H^{α+1}(m+σ_out)` with independent
/// input and output truncations.
pub fn calculus_operator(op: Calculus, m: u32, alpha: f64, dom: Truncation, cod: Truncation) -> Result<AssembledOperator> {
    let (sin, sout) = op.spins();
    let domain = SpaceTag::new(m, sin, alpha, dom)?;
    let codomain = SpaceTag::new(m, sout, alpha + 1.0, cod)?;
    let (base, sign) = if m == 0 { op.mirrored() } else { (op, 1.0) };
    assemble(domain, codomain, op.name(), |l| {
        let mut t = base.terms(l, alpha)?;
        for term in &mut t {
            term.coeff *= sign;
        }
        Ok(t)
    })
}

/// `(G^+, G^-, G^0)`
pub fn gradient(m: u32, alpha: f64, trunc: Truncation) -> Result<(AssembledOperator, AssembledOperator, AssembledOperator)> {
    Ok((
        calculus_operator(Calculus::GradPlus, m, alpha, trunc, trunc)?,
        calculus_operator(Calculus::GradMinus, m, alpha, trunc, trunc)?,
        calculus_operator(Calculus::GradZero, m, alpha, trunc, trunc)?,
    ))
}

/// `(D^- on σ=+, D^+ on σ=-, D^0)`, all into the same scalar codomain.
pub fn divergence(m: u32, alpha: f64, trunc: Truncation) -> Result<(AssembledOperator, AssembledOperator, AssembledOperator)> {
    let ops = (
        calculus_operator(Calculus::DivPlus, m, alpha, trunc, trunc)?,
        calculus_operator(Calculus::DivMinus, m, alpha, trunc, trunc)?,
        calculus_operator(Calculus::DivZero, m, alpha, trunc, trunc)?,
    );
    for other in [&ops.1, &ops.2] {
        if other.codomain != ops.0.codomain {
            return Err(Error::TagMismatch { expected: ops.0.codomain.label(), found: other.codomain.label() });
        }
    }
    Ok(ops)
}

/// The six nonzero blocks of the spin-space curl.
#[derive(Debug, Clone)]
pub struct CurlSet {
    pub plus_zero: AssembledOperator,
    pub minus_zero: AssembledOperator,
    pub plus_plus: AssembledOperator,
    pub minus_minus: AssembledOperator,
    pub zero_plus: AssembledOperator,
    pub zero_minus: AssembledOperator,
}

impl CurlSet {
    /// Block mapping spin `input` to spin `output`, `None` for the structural zeros.
    pub fn block(&self, output: Spin, input: Spin) -> Option<&AssembledOperator> {
        match (output, input) {
            (Spin::Plus, Spin::Plus) => Some(&self.plus_zero),
            (Spin::Plus, Spin::Zero) => Some(&self.plus_plus),
            (Spin::Minus, Spin::Minus) => Some(&self.minus_zero),
            (Spin::Minus, Spin::Zero) => Some(&self.minus_minus),
            (Spin::Zero, Spin::Plus) => Some(&self.zero_minus),
            (Spin::Zero, Spin::Minus) => Some(&self.zero_plus),
            _ => None,
        }
    }
}

pub fn curl(m: u32, alpha: f64, trunc: Truncation) -> Result<CurlSet> {
    let op = |c| calculus_operator(c, m, alpha, trunc, trunc);
    Ok(CurlSet {
        plus_zero: op(Calculus::CurlPlusPlus0)?,
        minus_zero: op(Calculus::CurlMinusMinus0)?,
        plus_plus: op(Calculus::CurlPlusFromZero)?,
        minus_minus: op(Calculus::CurlMinusFromZero)?,
        zero_plus: op(Calculus::CurlZeroFromMinus)?,
        zero_minus: op(Calculus::CurlZeroFromPlus)?,
    })
}

/// Curl block `output ← input`, `None` where the spin matrix has a zero.
pub fn curl_block(m: u32, output: Spin, input: Spin, alpha: f64, trunc: Truncation) -> Result<Option<AssembledOperator>> {
    let op = match (output, input) {
        (Spin::Plus, Spin::Plus) => Calculus::CurlPlusPlus0,
        (Spin::Plus, Spin::Zero) => Calculus::CurlPlusFromZero,
        (Spin::Minus, Spin::Minus) => Calculus::CurlMinusMinus0,
        (Spin::Minus, Spin::Zero) => Calculus::CurlMinusFromZero,
        (Spin::Zero, Spin::Plus) => Calculus::CurlZeroFromPlus,
        (Spin::Zero, Spin::Minus) => Calculus::CurlZeroFromMinus,
        _ => return Ok(None),
    };
    calculus_operator(op, m, alpha, trunc, trunc).map(Some)
}

fn grad_op(s: Spin) -> Calculus {
    match s {
        Spin::Plus => Calculus::GradPlus,
        Spin::Minus => Calculus::GradMinus,
        Spin::Zero => Calculus::GradZero,
    }
}

fn div_op(s: Spin) -> Calculus {
    match s {
        Spin::Plus => Calculus::DivPlus,
        Spin::Minus => Calculus::DivMinus,
        Spin::Zero => Calculus::DivZero,
    }
}

/// `∇² = D^- G^+ + D^+ G^- + D^0 G^0 : H^α(m) → H^{α+2}(m)`
pub fn scalar_laplacian(m: u32, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let mut total: Option<AssembledOperator> = None;
    for s in Spin::ALL {
        let g = calculus_operator(grad_op(s), m, alpha, trunc, trunc)?;
        let d = calculus_operator(div_op(s), m, alpha + 1.0, trunc, trunc)?;
        let dg = d.compose(&g)?;
        total = Some(match total {
            None => dg,
            Some(t) => t.add(&dg)?,
        });
    }
    Ok(total.unwrap().renamed("L"))
}

/// Block `output ← input` of `∇(∇·) - ∇×∇×` at `α → α+2`.
pub fn vector_laplacian_block(m: u32, output: Spin, input: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let d = calculus_operator(div_op(input), m, alpha, trunc, trunc)?;
    let g = calculus_operator(grad_op(output), m, alpha + 1.0, trunc, trunc)?;
    let mut acc = g.compose(&d)?;
    for mid in Spin::ALL {
        let (Some(inner), Some(outer)) = (
            curl_block(m, mid, input, alpha, trunc)?,
            curl_block(m, output, mid, alpha + 1.0, trunc)?,
        ) else {
            continue;
        };
        acc = acc.sub(&outer.compose(&inner)?)?;
    }
    Ok(acc.renamed(alloc::format!("L[{}{}]", output.symbol(), input.symbol())))
}

/// Spin-diagonal component `L_σ: H^α(m+σ) → H^{α+2}(m+σ)`.
pub fn vector_laplacian_component(m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    Ok(vector_laplacian_block(m, sigma, sigma, alpha, trunc)?.renamed(alloc::format!("L{}", sigma.symbol())))
}

/// `(L_+, L_-, L_0)`
pub fn vector_laplacian(m: u32, alpha: f64, trunc: Truncation) -> Result<(AssembledOperator, AssembledOperator, AssembledOperator)> {
    Ok((
        vector_laplacian_component(m, Spin::Plus, alpha, trunc)?,
        vector_laplacian_component(m, Spin::Minus, alpha, trunc)?,
        vector_laplacian_component(m, Spin::Zero, alpha, trunc)?,
    ))
}
