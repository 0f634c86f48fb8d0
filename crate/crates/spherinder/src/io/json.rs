use serde::{Deserialize, Serialize};
use spherinder_core::basis::{SpaceTag, Spin};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagJson {
    pub m: u32,
    pub sigma: i32,
    pub alpha: f64,
    pub l_max: usize,
    pub n_max: usize,
    pub size: usize,
}

impl From<&SpaceTag> for TagJson {
    fn from(t: &SpaceTag) -> Self {
        Self {
            m: t.m,
            sigma: t.sigma.value(),
            alpha: t.alpha,
            l_max: t.trunc.l_count,
            n_max: t.trunc.n_max,
            size: t.size(),
        }
    }
}

impl TagJson {
    pub fn spin(&self) -> Option<Spin> {
        Spin::from_value(self.sigma)
    }
}

/// Side-file written next to an exported operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSideFile {
    pub schema_version: u32,
    pub name: String,
    pub domain: TagJson,
    pub codomain: TagJson,
    pub shape: [usize; 2],
    pub nnz: usize,
    pub delta_l: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverJson {
    pub mode: String,
    pub target: Option<[f64; 2]>,
    pub count: Option<usize>,
    pub tol: f64,
    pub converged: bool,
    pub dropped: usize,
    pub sort: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub name: String,
    pub offset: usize,
    pub size: usize,
    pub tag: Option<TagJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalJson {
    pub rayleigh: f64,
    pub omega: f64,
    pub reduced_rayleigh: f64,
    pub reduced_omega: f64,
    pub iterations: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub name: String,
    pub max_residual: f64,
    pub threshold: Option<f64>,
    pub passed: bool,
}

/// `results.json`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsFile {
    pub schema_version: u32,
    pub problem: String,
    pub m: u32,
    pub l_max: usize,
    pub n_max: usize,
    pub alpha: Option<f64>,
    pub ekman: Option<f64>,
    pub prandtl: Option<f64>,
    pub rayleigh: Option<f64>,
    pub size: usize,
    pub variables: Vec<BlockJson>,
    pub solver: SolverJson,
    pub eigenvalues: Vec<[f64; 2]>,
    pub residuals: Vec<f64>,
    pub checks: Vec<CheckJson>,
    pub critical: Option<CriticalJson>,
}
