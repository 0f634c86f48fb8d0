//! Discretized eigenproblems `L X = λ M X`.
//!
//! Every builder returns a [`GeneralizedEVP`] whose unknowns and equations are
//! split into named blocks. Field blocks carry their [`SpaceTag`]; tau blocks
//! and boundary rows carry only a size.

mod builder;
mod systems;

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::{SpaceTag, SpectralField, SpinVectorField, Truncation};
use crate::error::{Error, Result};
use crate::operators::one_minus_r2;
use crate::sparse::CooMatrix;

pub use systems::{build_bessel, build_bessel_with_tau, build_convection, build_damped_inertial, build_inertial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub ekman: f64,
    pub prandtl: f64,
    pub rayleigh: f64,
}

impl PhysicalParams {
    pub fn new(ekman: f64, prandtl: f64, rayleigh: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(ekman) || !ok(prandtl) || !(rayleigh.is_finite() && rayleigh >= 0.0) {
            return Err(Error::Assembly(alloc::format!(
                "physical parameters out of range: E={ekman}, Pr={prandtl}, Ra={rayleigh}"
            )));
        }
        Ok(Self { ekman, prandtl, rayleigh })
    }

    pub fn with_rayleigh(&self, rayleigh: f64) -> Result<Self> {
        Self::new(self.ekman, self.prandtl, rayleigh)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Tau,
    Galerkin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    BesselTau,
    BesselGalerkin,
    Inertial,
    DampedInertial,
    Convection,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::BesselTau => "bessel-tau",
            ProblemKind::BesselGalerkin => "bessel-galerkin",
            ProblemKind::Inertial => "inertial",
            ProblemKind::DampedInertial => "damped-inertial",
            ProblemKind::Convection => "convection",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::BesselTau, Self::BesselGalerkin, Self::Inertial, Self::DampedInertial, Self::Convection]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlockSpace {
    Field(SpaceTag),
    /// tau unknowns or boundary rows
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub name: String,
    pub space: BlockSpace,
    pub offset: usize,
    pub size: usize,
}

impl Block {
    pub fn range(&self) -> core::ops::Range<usize> {
        self.offset..self.offset + self.size
    }

    pub fn tag(&self) -> Option<SpaceTag> {
        match self.space {
            BlockSpace::Field(t) => Some(t),
            BlockSpace::Auxiliary => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEVP {
    pub kind: ProblemKind,
    pub m: u32,
    pub trunc: Truncation,
    pub params: Option<PhysicalParams>,
    pub l: CooMatrix,
    pub mass: CooMatrix,
    pub variables: Vec<Block>,
    pub equations: Vec<Block>,
}

/// Physical fields recovered from an eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredFields {
    /// `f` for the Bessel problems, pressure otherwise
    pub scalar: SpectralField,
    pub velocity: Option<SpinVectorField>,
    pub temperature: Option<SpectralField>,
}

impl GeneralizedEVP {
    pub fn size(&self) -> usize {
        self.l.nrows()
    }

    pub fn variable(&self, name: &str) -> Option<&Block> {
        self.variables.iter().find(|b| b.name == name)
    }

    pub fn equation(&self, name: &str) -> Option<&Block> {
        self.equations.iter().find(|b| b.name == name)
    }

    /// Coefficients of a field block in `x`.
    pub fn field(&self, x: &[Complex64], name: &str) -> Result<SpectralField> {
        if x.len() != self.size() {
            return Err(Error::Dimension { expected: self.size(), found: x.len() });
        }
        let block = self.variable(name).ok_or_else(|| Error::Assembly(alloc::format!("no variable {name}")))?;
        let tag = block.tag().ok_or_else(|| Error::Assembly(alloc::format!("{name} is not a field")))?;
        SpectralField::new(tag, x[block.range()].to_vec())
    }

    pub fn tau(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.variables
            .iter()
            .filter(|b| b.space == BlockSpace::Auxiliary)
            .flat_map(|b| x[b.range()].iter().copied())
            .collect()
    }

    /// Undo the state scaling and Galerkin recombination.
    pub fn recover(&self, x: &[Complex64]) -> Result<RecoveredFields> {
        let galerkin = |f: SpectralField| -> Result<SpectralField> {
            let t = f.tag;
            one_minus_r2(t.m, t.sigma, t.alpha, t.trunc)?.apply(&f)
        };
        match self.kind {
            ProblemKind::BesselTau => Ok(RecoveredFields { scalar: self.field(x, "f")?, velocity: None, temperature: None }),
            ProblemKind::BesselGalerkin => {
                Ok(RecoveredFields { scalar: galerkin(self.field(x, "g")?)?, velocity: None, temperature: None })
            }
            ProblemKind::Inertial => {
                let unscale = |mut f: SpectralField| {
                    for c in &mut f.coeffs {
                        *c *= Complex64::new(0.0, -1.0);
                    }
                    f
                };
                let u = SpinVectorField::new(
                    unscale(self.field(x, "iu+")?),
                    unscale(self.field(x, "iu-")?),
                    unscale(self.field(x, "iu0")?),
                )?;
                Ok(RecoveredFields { scalar: self.field(x, "p")?, velocity: Some(u), temperature: None })
            }
            ProblemKind::DampedInertial | ProblemKind::Convection => {
                let u = SpinVectorField::new(
                    galerkin(self.field(x, "g+")?)?,
                    galerkin(self.field(x, "g-")?)?,
                    galerkin(self.field(x, "g0")?)?,
                )?;
                let temperature = match self.kind {
                    ProblemKind::Convection => Some(galerkin(self.field(x, "theta")?)?),
                    _ => None,
                };
                Ok(RecoveredFields { scalar: self.field(x, "p")?, velocity: Some(u), temperature })
            }
        }
    }
}
