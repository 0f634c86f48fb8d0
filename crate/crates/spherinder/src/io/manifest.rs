use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub l_max: usize,
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsSpec {
    pub ekman: f64,
    #[serde(default = "one")]
    pub prandtl: f64,
    #[serde(default)]
    pub rayleigh: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Dense,
    ShiftInvert,
    /// dense up to the size limit, shift-invert above
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub mode: SolverKind,
    #[serde(default)]
    pub target: Option<[f64; 2]>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    1e-8
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalSpec {
    /// Rayleigh bracket in reduced units `Ra·E^{4/3}`
    pub reduced_bracket: [f64; 2],
    /// starting guess for the critical eigenvalue in reduced units
    /// `λ·E^{2/3}`
    #[serde(default)]
    pub reduced_target: Option<[f64; 2]>,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

fn default_rel_tol() -> f64 {
    1e-7
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksSpec {
    #[serde(default)]
    pub divergence: Option<f64>,
    #[serde(default)]
    pub boundary: Option<f64>,
    #[serde(default)]
    pub spin_roundtrip: Option<f64>,
    #[serde(default)]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
    /// number of eigenvectors dumped as grids, least damped first
    #[serde(default)]
    pub grids: usize,
    #[serde(default = "default_grid")]
    pub grid_size: usize,
    #[serde(default)]
    pub vectors: bool,
}

fn default_grid() -> usize {
    128
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub problem: String,
    pub m: u32,
    pub truncation: TruncationSpec,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub physics: Option<PhysicsSpec>,
    pub solver: SolverSpec,
    #[serde(default)]
    pub critical: Option<CriticalSpec>,
    #[serde(default)]
    pub checks: ChecksSpec,
    pub output: OutputSpec,
}

impl RunManifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: RunManifest = serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks that need more than the schema. Relative output paths are kept
    /// as given.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Manifest(s));
        let known = ["bessel-tau", "bessel-galerkin", "inertial", "damped-inertial", "convection"];
        if !known.contains(&self.problem.as_str()) {
            return bad(format!("unknown problem {:?}; expected one of {known:?}", self.problem));
        }
        if self.truncation.l_max == 0 || self.truncation.n_max == 0 {
            return bad("truncation must be positive".into());
        }
        let needs_physics = matches!(self.problem.as_str(), "damped-inertial" | "convection");
        match (&self.physics, needs_physics) {
            (None, true) => return bad(format!("{} needs a physics block", self.problem)),
            (Some(_), false) => return bad(format!("{} takes no physics block", self.problem)),
            (Some(p), true) if !(p.ekman > 0.0 && p.prandtl > 0.0 && p.rayleigh >= 0.0) => {
                return bad("physics parameters out of range".into())
            }
            _ => {}
        }
        if self.alpha.is_some() && !self.problem.starts_with("bessel") {
            return bad("alpha only applies to the Bessel problems".into());
        }
        if self.critical.is_some() && self.problem != "convection" {
            return bad("critical search only applies to convection".into());
        }
        if let Some(c) = &self.critical {
            if !(c.reduced_bracket[0] < c.reduced_bracket[1]) {
                return bad("critical bracket must be increasing".into());
            }
        }
        if self.solver.mode == SolverKind::ShiftInvert && self.solver.target.is_none() && self.critical.is_none() {
            return bad("shift-invert needs a target".into());
        }
        if !(self.solver.tol > 0.0) {
            return bad("solver tolerance must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BESSEL: &str = r#"{
        "problem": "bessel-tau", "m": 0,
        "truncation": {"l_max": 8, "n_max": 12},
        "solver": {"mode": "dense"},
        "output": {"dir": "out"}
    }"#;

    #[test]
    fn parses_minimal() {
        let m = RunManifest::from_json(BESSEL).unwrap();
        assert_eq!(m.truncation, TruncationSpec { l_max: 8, n_max: 12 });
        assert_eq!(m.solver.tol, 1e-8);
        assert_eq!(m.output.grid_size, 128);
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = BESSEL.replace("\"m\": 0,", "\"m\": 0, \"colour\": 1,");
        assert!(RunManifest::from_json(&text).is_err());
        let text = BESSEL.replace("\"mode\": \"dense\"", "\"mode\": \"dense\", \"shift\": 2");
        assert!(RunManifest::from_json(&text).is_err());
    }

    #[test]
    fn rejects_inconsistent_blocks() {
        let text = BESSEL.replace("bessel-tau", "convection");
        assert!(RunManifest::from_json(&text).is_err());
        let text = BESSEL.replace("bessel-tau", "spectral-soup");
        assert!(RunManifest::from_json(&text).is_err());
    }
}
