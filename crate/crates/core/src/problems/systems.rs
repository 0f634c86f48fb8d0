use num_complex::Complex64;

use super::builder::SystemBuilder;
use super::{GeneralizedEVP, Method, PhysicalParams, ProblemKind};
use crate::basis::{SpaceTag, Spin, Truncation};
use crate::error::{Error, Result};
use crate::operators::{
    boundary_rows, calculus_operator, conversion_power, one_minus_r2, radial_component_part, radial_multiply_component,
    scalar_laplacian, tau_columns, vector_laplacian_component, AssembledOperator, Calculus, TauProjection, TauSpec,
};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(L, N) → (L+2, N+1)`, the image of multiplication by `1 - r²`.
fn grown(t: Truncation) -> Result<Truncation> {
    Truncation::new(t.l_count + 2, t.n_max + 1)
}

/// `(L-1, N)`, used for the vertical velocity.
fn vertical_trunc(t: Truncation) -> Result<Truncation> {
    if t.l_count < 2 {
        return Err(Error::Assembly(alloc::format!("need at least two vertical modes, got {}", t.l_count)));
    }
    Truncation::new(t.l_count - 1, t.n_max)
}

fn grad(s: Spin) -> Calculus {
    match s {
        Spin::Plus => Calculus::GradPlus,
        Spin::Minus => Calculus::GradMinus,
        Spin::Zero => Calculus::GradZero,
    }
}

fn div(s: Spin) -> Calculus {
    match s {
        Spin::Plus => Calculus::DivPlus,
        Spin::Minus => Calculus::DivMinus,
        Spin::Zero => Calculus::DivZero,
    }
}

fn tau_block(b: &mut SystemBuilder, eq: usize, name: &str, spec: TauSpec, codomain: &SpaceTag) -> Result<()> {
    let cols = tau_columns(&spec, codomain)?;
    let var = b.tau(name, cols.ncols());
    b.l_matrix(eq, var, cols)
}

/// Spherical Bessel problem `-∇² f = κ² f`, `f(1) = 0`. Eigenvalues are `κ²`.
///
/// `alpha` is the parameter of `f` (tau) or of the recombined unknown `g`
/// minus one (Galerkin), so `f` lives in `H^α` for both methods.
pub fn build_bessel(m: u32, trunc: Truncation, alpha: f64, method: Method) -> Result<GeneralizedEVP> {
    build_bessel_with_tau(m, trunc, alpha, method, TauProjection::Conversion(1))
}

/// [`build_bessel`] with an explicit tau projection.
pub fn build_bessel_with_tau(
    m: u32,
    trunc: Truncation,
    alpha: f64,
    method: Method,
    projection: TauProjection,
) -> Result<GeneralizedEVP> {
    let mut b = SystemBuilder::default();
    match method {
        Method::Tau => {
            let f_tag = SpaceTag::new(m, Spin::Zero, alpha, trunc)?;
            let lap = scalar_laplacian(m, alpha, trunc)?;
            let conv = conversion_power(m, Spin::Zero, alpha, trunc, 2)?;
            let bc = boundary_rows(m, Spin::Zero, alpha, trunc)?;
            let f = b.field("f", f_tag);
            let eq = b.equation("helmholtz", lap.codomain);
            let rows = b.rows("boundary", bc.codomain.size());
            b.l_op(eq, f, &lap, -ONE)?;
            b.m_op(eq, f, &conv, ONE)?;
            b.l_op(rows, f, &bc, ONE)?;
            tau_block(&mut b, eq, "tau", TauSpec::standard(projection), &lap.codomain)?;
            b.finish(ProblemKind::BesselTau, m, trunc, None)
        }
        Method::Galerkin => {
            let g_tag = SpaceTag::new(m, Spin::Zero, alpha + 1.0, trunc)?;
            let s = one_minus_r2(m, Spin::Zero, alpha + 1.0, trunc)?;
            let big = s.codomain.trunc;
            let lap = scalar_laplacian(m, alpha, big)?.compose(&s)?;
            let conv = conversion_power(m, Spin::Zero, alpha, big, 2)?.compose(&s)?;
            let g = b.field("g", g_tag);
            let eq = b.equation("helmholtz", lap.codomain);
            b.l_op(eq, g, &lap, -ONE)?;
            b.m_op(eq, g, &conv, ONE)?;
            let spec = TauSpec::galerkin(projection, trunc);
            tau_block(&mut b, eq, "tau", spec, &lap.codomain)?;
            b.finish(ProblemKind::BesselGalerkin, m, trunc, None)
        }
    }
}

/// Inviscid inertial waves, state `(iU⁺, iU⁻, iU⁰, P, τ)`.
///
/// Pressure at `α = 0`, velocity at `α = 1`, the vertical velocity with one
/// fewer vertical mode. The radial velocity `r⃗·u` is evaluated on `(L, N)`
/// and set to zero on the sphere. The matrices are real.
pub fn build_inertial(m: u32, trunc: Truncation) -> Result<GeneralizedEVP> {
    let t0 = vertical_trunc(trunc)?;
    let p_tag = SpaceTag::new(m, Spin::Zero, 0.0, trunc)?;
    let u_tag = |s: Spin| SpaceTag::new(m, s, 1.0, if s == Spin::Zero { t0 } else { trunc });

    let mut b = SystemBuilder::default();
    let names = [(Spin::Plus, "iu+"), (Spin::Minus, "iu-"), (Spin::Zero, "iu0")];
    let mut u = [0; 3];
    for (i, (s, name)) in names.iter().enumerate() {
        u[i] = b.field(name, u_tag(*s)?);
    }
    let p = b.field("p", p_tag);
    let mut eqs = [0; 3];
    for (i, (s, _)) in names.iter().enumerate() {
        eqs[i] = b.equation(&alloc::format!("momentum{}", s.symbol()), u_tag(*s)?);
    }
    let div_tag = SpaceTag::new(m, Spin::Zero, 2.0, trunc)?;
    let div_eq = b.equation("divergence", div_tag);
    let bc = boundary_rows(m, Spin::Zero, 1.0, trunc)?;
    let rows = b.rows("boundary", bc.codomain.size());

    for (i, (s, _)) in names.iter().enumerate() {
        let ut = u_tag(*s)?;
        let coriolis = match s {
            Spin::Plus => -2.0,
            Spin::Minus => 2.0,
            Spin::Zero => 0.0,
        };
        if coriolis != 0.0 {
            b.l_op(eqs[i], u[i], &AssembledOperator::identity(ut), re(coriolis))?;
        }
        b.m_op(eqs[i], u[i], &AssembledOperator::identity(ut), ONE)?;
        let g = calculus_operator(grad(*s), m, 0.0, trunc, ut.trunc)?;
        b.l_op(eqs[i], p, &g, -ONE)?;
        let d = calculus_operator(div(*s), m, 1.0, ut.trunc, trunc)?;
        b.l_op(div_eq, u[i], &d, ONE)?;
        let e = radial_component_part(m, *s, 1.0, ut.trunc, trunc)?;
        b.l_op(rows, u[i], &bc.compose(&e)?, ONE)?;
    }
    tau_block(&mut b, eqs[0], "tau", TauSpec::standard(TauProjection::Conversion(1)), &u_tag(Spin::Plus)?)?;
    b.finish(ProblemKind::Inertial, m, trunc, None)
}

/// Shared layout of the viscous problems. Velocity `u = S g` with `g` at
/// `α = 2`, pressure at `α = 2`, momentum at `α = 3`, divergence at `α = 2`.
/// Momentum rows are scaled as `inertia·λ u = viscosity·∇²u - coriolis·ê_z×u - ∇p`.
struct Viscous {
    builder: SystemBuilder,
    g: [usize; 3],
    eqs: [usize; 3],
    /// `S_σ` for each spin
    s_ops: [AssembledOperator; 3],
}

const SPINS: [Spin; 3] = [Spin::Plus, Spin::Minus, Spin::Zero];

fn spin_trunc(s: Spin, trunc: Truncation, t0: Truncation) -> Truncation {
    if s == Spin::Zero {
        t0
    } else {
        trunc
    }
}

fn viscous_layout(
    m: u32,
    trunc: Truncation,
    inertia: f64,
    viscosity: f64,
    coriolis: f64,
    temperature: bool,
) -> Result<(Viscous, Option<usize>)> {
    if m == 0 {
        return Err(Error::Assembly("viscous problems need m >= 1".into()));
    }
    let t0 = vertical_trunc(trunc)?;
    let mut b = SystemBuilder::default();
    let g_names = ["g+", "g-", "g0"];
    let mut g = [0; 3];
    let mut s_ops = alloc::vec::Vec::new();
    for (i, s) in SPINS.iter().enumerate() {
        let gt = SpaceTag::new(m, *s, 2.0, spin_trunc(*s, trunc, t0))?;
        g[i] = b.field(g_names[i], gt);
        s_ops.push(one_minus_r2(m, *s, 2.0, gt.trunc)?);
    }
    let p_tag = SpaceTag::new(m, Spin::Zero, 2.0, trunc)?;
    let p = b.field("p", p_tag);
    let theta = if temperature { Some(b.field("theta", SpaceTag::new(m, Spin::Zero, 2.0, trunc)?)) } else { None };

    let mut eqs = [0; 3];
    for (i, s) in SPINS.iter().enumerate() {
        let cod = s_ops[i].codomain.with_alpha(3.0);
        eqs[i] = b.equation(&alloc::format!("momentum{}", s.symbol()), cod);
    }
    let big = grown(trunc)?;
    let div_eq = b.equation("divergence", SpaceTag::new(m, Spin::Zero, 2.0, big)?);

    for (i, s) in SPINS.iter().enumerate() {
        let so = &s_ops[i];
        let ut = so.codomain.trunc;
        let lap = vector_laplacian_component(m, *s, 1.0, ut)?.compose(so)?;
        let conv = conversion_power(m, *s, 1.0, ut, 2)?.compose(so)?;
        b.l_op(eqs[i], g[i], &lap, re(viscosity))?;
        let rot = match s {
            Spin::Plus => -I * coriolis,
            Spin::Minus => I * coriolis,
            Spin::Zero => Complex64::new(0.0, 0.0),
        };
        if rot.norm() != 0.0 {
            b.l_op(eqs[i], g[i], &conv, rot)?;
        }
        b.m_op(eqs[i], g[i], &conv, re(inertia))?;
        let grad_p = calculus_operator(grad(*s), m, 2.0, trunc, ut)?;
        b.l_op(eqs[i], p, &grad_p, -ONE)?;
        let d = calculus_operator(div(*s), m, 1.0, ut, big)?.compose(so)?;
        b.l_op(div_eq, g[i], &d, ONE)?;
        let inner = spin_trunc(*s, trunc, t0);
        let spec = TauSpec::galerkin(TauProjection::Conversion(1), inner);
        tau_block(&mut b, eqs[i], &alloc::format!("tau{}", s.symbol()), spec, &so.codomain.with_alpha(3.0))?;
    }
    let spec = TauSpec::galerkin(TauProjection::Conversion(1), trunc);
    tau_block(&mut b, div_eq, "tau_div", spec, &SpaceTag::new(m, Spin::Zero, 2.0, big)?)?;
    let s_ops: [AssembledOperator; 3] = s_ops.try_into().map_err(|_| Error::Assembly("spin count".into()))?;
    Ok((Viscous { builder: b, g, eqs, s_ops }, theta))
}

/// Damped inertial waves `λ u = E ∇²u - 2 ê_z×u - ∇p`, `∇·u = 0`, `u = 0`
/// on the sphere, with Galerkin recombination of all velocity components.
pub fn build_damped_inertial(m: u32, trunc: Truncation, ekman: f64) -> Result<GeneralizedEVP> {
    if !(ekman.is_finite() && ekman > 0.0) {
        return Err(Error::Assembly(alloc::format!("Ekman number must be positive, got {ekman}")));
    }
    let (v, _) = viscous_layout(m, trunc, 1.0, ekman, 2.0, false)?;
    let params = PhysicalParams { ekman, prandtl: 1.0, rayleigh: 0.0 };
    v.builder.finish(ProblemKind::DampedInertial, m, trunc, Some(params))
}

/// Rotating convection with the base temperature `(1 - r²)/2`:
///
/// `E(λ - ∇²) u + ê_z×u = -∇p + Ra E ϑ r⃗`, `∇·u = 0`,
/// `(Pr λ - ∇²) ϑ = Pr u·r⃗`, with `u = 0` and `ϑ = 0` on the sphere.
///
/// `Ra` is the viscous-diffusive Rayleigh number, so onset sits at
/// `Ra ~ E^{-4/3}` and frequencies at `λ ~ E^{-2/3}`.
/// The temperature `ϑ = S θ` lives at `α = 1` like the velocity.
pub fn build_convection(m: u32, trunc: Truncation, params: PhysicalParams) -> Result<GeneralizedEVP> {
    let PhysicalParams { ekman, prandtl, rayleigh } = PhysicalParams::new(params.ekman, params.prandtl, params.rayleigh)?;
    let (v, theta) = viscous_layout(m, trunc, ekman, ekman, 1.0, true)?;
    let theta = theta.expect("temperature block requested");
    let Viscous { builder: mut b, g, eqs, s_ops } = v;

    let big = grown(trunc)?;
    let s_theta = one_minus_r2(m, Spin::Zero, 2.0, trunc)?;
    let temp_eq = b.equation("temperature", SpaceTag::new(m, Spin::Zero, 3.0, big)?);

    // buoyancy Ra E I² R^σ ϑ, clipped to each momentum truncation
    for (i, s) in SPINS.iter().enumerate() {
        let ut = s_ops[i].codomain.trunc;
        let r = radial_multiply_component(m, *s, 1.0, big, ut)?;
        let op = conversion_power(m, *s, 1.0, ut, 2)?.compose(&r)?.compose(&s_theta)?;
        b.l_op(eqs[i], theta, &op, re(rayleigh * ekman))?;
    }

    let lap = scalar_laplacian(m, 1.0, big)?.compose(&s_theta)?;
    let conv = conversion_power(m, Spin::Zero, 1.0, big, 2)?;
    b.l_op(temp_eq, theta, &lap, ONE)?;
    b.m_op(temp_eq, theta, &conv.compose(&s_theta)?, re(prandtl))?;
    for (i, s) in SPINS.iter().enumerate() {
        let e = radial_component_part(m, *s, 1.0, s_ops[i].codomain.trunc, big)?;
        let op = conv.compose(&e)?.compose(&s_ops[i])?;
        b.l_op(temp_eq, g[i], &op, re(prandtl))?;
    }
    let spec = TauSpec::galerkin(TauProjection::Conversion(1), trunc);
    tau_block(&mut b, temp_eq, "tau_theta", spec, &SpaceTag::new(m, Spin::Zero, 3.0, big)?)?;
    b.finish(ProblemKind::Convection, m, trunc, Some(PhysicalParams { ekman, prandtl, rayleigh }))
}
