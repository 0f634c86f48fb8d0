//! Geometry, truncation and the spin-weighted ball basis
//!
//! `Ψ^{σ,α}_{m,l,k} = N_α^{-1} e^{imφ} (1+t)^{b/2} (1-t)^{l/2} p_l^{(α,α)}(η) p_k^{(l+α+1/2, b)}(t)`
//! with `t = 2s² - 1`, `b = |m + σ|` and `p` the orthonormal Jacobi polynomials.

mod eval;
mod projection;
mod spinor;
mod vertical;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::math::{atan2, hypot, sqrt};

pub use eval::{eval_basis, eval_field, eval_vector, normalization};
pub use projection::{ball_quadrature, project_scalar, BallQuadrature};
pub use spinor::{cylindrical_from_spinor, cylindrical_to_cartesian, spinor_from_cylindrical};
pub use vertical::{one_minus_eta2_coefficients, vertical_coefficients, VerticalCoefficients};

/// A point of the ball in stretched cylindrical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherinderPoint {
    pub s: f64,
    pub phi: f64,
    pub eta: f64,
}

impl SpherinderPoint {
    pub fn new(s: f64, phi: f64, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) || !(-1.0..=1.0).contains(&eta) || !phi.is_finite() {
            return Err(Error::Assembly(format!("point (s={s}, phi={phi}, eta={eta}) outside the ball")));
        }
        Ok(Self { s, phi, eta })
    }

    /// Inverse of [`to_cartesian`]; on the equator `s = 1` the stretched
    /// coordinate is arbitrary and is reported as 0.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Result<Self> {
        let s = hypot(x, y);
        let h = sqrt((1.0 - s * s).max(0.0));
        let eta = if h > 0.0 { z / h } else { 0.0 };
        let phi = atan2(y, x);
        let phi = if phi < 0.0 { phi + 2.0 * crate::math::PI } else { phi };
        Self::new(s.min(1.0), phi, eta.clamp(-1.0, 1.0))
    }

    pub fn t(&self) -> f64 {
        2.0 * self.s * self.s - 1.0
    }

    pub fn z(&self) -> f64 {
        self.eta * sqrt(1.0 - self.s * self.s)
    }

    pub fn r(&self) -> f64 {
        let z = self.z();
        sqrt(self.s * self.s + z * z)
    }
}

/// `(x, y, z) = (s cos φ, s sin φ, η sqrt(1 - s²))`
pub fn to_cartesian(p: &SpherinderPoint) -> (f64, f64, f64) {
    (p.s * crate::math::cos(p.phi), p.s * crate::math::sin(p.phi), p.z())
}

/// Triangular truncation: vertical degrees `l = 0..l_count` and
/// `N(l) = n_max - floor(l/2)` radial modes for each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub l_count: usize,
    pub n_max: usize,
}

impl Truncation {
    /// Either count may be zero (an empty space). Otherwise every retained
    /// vertical degree must keep at least one radial mode.
    pub fn new(l_count: usize, n_max: usize) -> Result<Self> {
        let t = Self { l_count, n_max };
        if l_count > 0 && n_max > 0 && n_max <= (l_count - 1) / 2 {
            return Err(Error::Assembly(format!(
                "truncation (L={l_count}, N={n_max}) leaves l = {} without radial modes",
                l_count - 1
            )));
        }
        Ok(t)
    }

    pub fn radial_count(&self, l: usize) -> usize {
        if l >= self.l_count {
            0
        } else {
            self.n_max.saturating_sub(l / 2)
        }
    }

    pub fn radial_counts(&self) -> Vec<usize> {
        (0..self.l_count).map(|l| self.radial_count(l)).collect()
    }

    /// Position of the first `(l, 0)` coefficient.
    pub fn offset(&self, l: usize) -> usize {
        if self.n_max == 0 {
            return 0;
        }
        let l = l.min(self.l_count);
        let dropped = if l == 0 { 0 } else { (l - 1) * (l - 1) / 4 };
        l * self.n_max - dropped
    }

    pub fn size(&self) -> usize {
        self.offset(self.l_count)
    }

    pub fn index(&self, l: usize, k: usize) -> Option<usize> {
        (k < self.radial_count(l)).then(|| self.offset(l) + k)
    }

    /// `(l, k)` of a flat index.
    pub fn mode(&self, index: usize) -> Option<(usize, usize)> {
        if index >= self.size() {
            return None;
        }
        let mut l = 0;
        while self.offset(l + 1) <= index {
            l += 1;
        }
        Some((l, index - self.offset(l)))
    }

    /// All retained `(l, k)` in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.l_count).flat_map(move |l| (0..self.radial_count(l)).map(move |k| (l, k)))
    }

    pub fn contains(&self, other: &Truncation) -> bool {
        (0..other.l_count).all(|l| other.radial_count(l) <= self.radial_count(l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Minus,
    Zero,
    Plus,
}

impl Spin {
    pub const ALL: [Spin; 3] = [Spin::Plus, Spin::Minus, Spin::Zero];

    pub fn value(self) -> i32 {
        match self {
            Spin::Minus => -1,
            Spin::Zero => 0,
            Spin::Plus => 1,
        }
    }

    pub fn from_value(v: i32) -> Option<Self> {
        match v {
            -1 => Some(Spin::Minus),
            0 => Some(Spin::Zero),
            1 => Some(Spin::Plus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        Self::from_value(-self.value()).unwrap()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Spin::Minus => "-",
            Spin::Zero => "0",
            Spin::Plus => "+",
        }
    }
}

/// The space `H^α(m+σ)` under a given truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTag {
    pub m: u32,
    pub sigma: Spin,
    pub alpha: f64,
    pub trunc: Truncation,
}

impl SpaceTag {
    pub fn new(m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<Self> {
        if alpha <= -1.0 || !alpha.is_finite() {
            return Err(Error::ParameterDomain { a: alpha, b: alpha });
        }
        Ok(Self { m, sigma, alpha, trunc })
    }

    /// Radial `b` parameter `|m + σ|`. The `σ = -1` family at `m = 0` uses
    /// `b = 1`.
    pub fn b(&self) -> u32 {
        (self.m as i32 + self.sigma.value()).unsigned_abs()
    }

    pub fn radial_params(&self, l: usize) -> JacobiParams {
        JacobiParams { a: l as f64 + self.alpha + 0.5, b: self.b() as f64 }
    }

    pub fn vertical_params(&self) -> JacobiParams {
        JacobiParams { a: self.alpha, b: self.alpha }
    }

    pub fn size(&self) -> usize {
        self.trunc.size()
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self { alpha, ..*self }
    }

    pub fn with_sigma(&self, sigma: Spin) -> Self {
        Self { sigma, ..*self }
    }

    pub fn with_trunc(&self, trunc: Truncation) -> Self {
        Self { trunc, ..*self }
    }

    pub fn label(&self) -> String {
        format!(
            "H^{}(m={}, sigma={}) [L={}, N={}]",
            self.alpha,
            self.m,
            self.sigma.symbol(),
            self.trunc.l_count,
            self.trunc.n_max
        )
    }
}

/// Coefficients of one azimuthal mode, `l`-major then `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub tag: SpaceTag,
    pub coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(tag: SpaceTag, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != tag.size() {
            return Err(Error::Dimension { expected: tag.size(), found: coeffs.len() });
        }
        Ok(Self { tag, coeffs })
    }

    pub fn zeros(tag: SpaceTag) -> Self {
        Self { tag, coeffs: vec![Complex64::new(0.0, 0.0); tag.size()] }
    }

    pub fn get(&self, l: usize, k: usize) -> Option<Complex64> {
        self.tag.trunc.index(l, k).map(|i| self.coeffs[i])
    }

    pub fn set(&mut self, l: usize, k: usize, v: Complex64) -> Result<()> {
        let i = self.tag.trunc.index(l, k).ok_or(Error::IndexOutOfTruncation { l, k })?;
        self.coeffs[i] = v;
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.coeffs.iter().map(|c| c.norm_sqr()).sum())
    }
}

/// Spin components `(u_+, u_-, u_0)` of a vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinVectorField {
    pub plus: SpectralField,
    pub minus: SpectralField,
    pub zero: SpectralField,
}

impl SpinVectorField {
    pub fn new(plus: SpectralField, minus: SpectralField, zero: SpectralField) -> Result<Self> {
        let spins = [plus.tag.sigma, minus.tag.sigma, zero.tag.sigma];
        if spins != [Spin::Plus, Spin::Minus, Spin::Zero] {
            return Err(Error::Assembly(format!("spin components out of order: {spins:?}")));
        }
        for t in [&minus.tag, &zero.tag] {
            if t.m != plus.tag.m || t.alpha != plus.tag.alpha {
                return Err(Error::TagMismatch { expected: plus.tag.label(), found: t.label() });
            }
        }
        Ok(Self { plus, minus, zero })
    }

    pub fn component(&self, s: Spin) -> &SpectralField {
        match s {
            Spin::Plus => &self.plus,
            Spin::Minus => &self.minus,
            Spin::Zero => &self.zero,
        }
    }
}

/// Total unknowns of a layout of fields and tau columns.
pub fn dof_count(layout: &[(SpaceTag, usize)]) -> usize {
    layout.iter().map(|(tag, tau)| tag.size() + tau).sum()
}
