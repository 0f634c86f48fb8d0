//! Sparse operators between tagged spherinder spaces.
//!
//! Each operator is built from a per-`l` recipe: a list of
//! `(Δl, coefficient, radial Jacobi operator)` terms acting on the classical
//! (unnormalized) functions. Assembly converts every entry to the orthonormal
//! basis by the ratio of normalizations of the output and input functions.

mod assemble;
mod boundary;
mod calculus;
mod radial;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::{SpaceTag, SpectralField, Truncation};
use crate::error::{Error, Result};
use crate::sparse::CooMatrix;

pub use assemble::{assemble, Term};
pub use boundary::{
    boundary_rows, galerkin_tau_indices, tau_columns, tau_indices, TauProjection, TauSpec,
};
pub use calculus::{
    calculus_operator, curl, curl_block, divergence, gradient, scalar_laplacian, vector_laplacian,
    vector_laplacian_block, vector_laplacian_component, Calculus, CurlSet,
};
pub use radial::{
    conversion, conversion_power, one_minus_r2, radial_component, radial_component_part,
    radial_multiply, radial_multiply_component,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AssembledOperator {
    pub matrix: CooMatrix,
    pub domain: SpaceTag,
    pub codomain: SpaceTag,
    pub name: String,
}

impl AssembledOperator {
    pub fn new(matrix: CooMatrix, domain: SpaceTag, codomain: SpaceTag, name: impl Into<String>) -> Result<Self> {
        if matrix.shape() != (codomain.size(), domain.size()) {
            return Err(Error::Dimension { expected: codomain.size() * domain.size(), found: matrix.nrows() * matrix.ncols() });
        }
        Ok(Self { matrix, domain, codomain, name: name.into() })
    }

    pub fn identity(tag: SpaceTag) -> Self {
        Self { matrix: CooMatrix::identity(tag.size()), domain: tag, codomain: tag, name: "Id".into() }
    }

    pub fn zero(domain: SpaceTag, codomain: SpaceTag) -> Self {
        Self { matrix: CooMatrix::new(codomain.size(), domain.size()), domain, codomain, name: "0".into() }
    }

    /// `self ∘ inner`; requires `self.domain == inner.codomain`.
    pub fn compose(&self, inner: &AssembledOperator) -> Result<Self> {
        if self.domain != inner.codomain {
            return Err(Error::TagMismatch { expected: self.domain.label(), found: inner.codomain.label() });
        }
        Ok(Self {
            matrix: self.matrix.matmul(&inner.matrix)?,
            domain: inner.domain,
            codomain: self.codomain,
            name: format!("{}*{}", self.name, inner.name),
        })
    }

    pub fn add(&self, other: &AssembledOperator) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::TagMismatch { expected: self.domain.label(), found: other.domain.label() });
        }
        if self.codomain != other.codomain {
            return Err(Error::TagMismatch { expected: self.codomain.label(), found: other.codomain.label() });
        }
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
            domain: self.domain,
            codomain: self.codomain,
            name: format!("{}+{}", self.name, other.name),
        })
    }

    pub fn sub(&self, other: &AssembledOperator) -> Result<Self> {
        let mut out = self.add(&other.scale(Complex64::new(-1.0, 0.0)))?;
        out.name = format!("{}-{}", self.name, other.name);
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn apply(&self, f: &SpectralField) -> Result<SpectralField> {
        if f.tag != self.domain {
            return Err(Error::TagMismatch { expected: self.domain.label(), found: f.tag.label() });
        }
        SpectralField::new(self.codomain, self.matrix.apply(&f.coeffs))
    }

    /// Re-express the output in a different truncation of the same space:
    /// modes absent from `trunc` are dropped, new ones are zero.
    pub fn retruncate_codomain(&self, trunc: Truncation) -> Self {
        let map = mode_map(&self.codomain.trunc, &trunc);
        let mut m = CooMatrix::new(trunc.size(), self.matrix.ncols());
        for &(r, c, v) in self.matrix.entries() {
            if let Some(nr) = map[r] {
                m.push(nr, c, v);
            }
        }
        m.canonicalize();
        Self { matrix: m, codomain: self.codomain.with_trunc(trunc), domain: self.domain, name: self.name.clone() }
    }

    /// Same as [`retruncate_codomain`](Self::retruncate_codomain) for the
    /// input side: dropped input modes lose their columns.
    pub fn retruncate_domain(&self, trunc: Truncation) -> Self {
        let map = mode_map(&trunc, &self.domain.trunc);
        // map: new index -> old index
        let mut inv = alloc::vec![None; self.domain.size()];
        for (new, old) in map.iter().enumerate() {
            if let Some(o) = old {
                inv[*o] = Some(new);
            }
        }
        let mut m = CooMatrix::new(self.matrix.nrows(), trunc.size());
        for &(r, c, v) in self.matrix.entries() {
            if let Some(nc) = inv[c] {
                m.push(r, nc, v);
            }
        }
        m.canonicalize();
        Self { matrix: m, domain: self.domain.with_trunc(trunc), codomain: self.codomain, name: self.name.clone() }
    }

    /// Nonzero `(l_out, l_in)` block pairs, sorted.
    pub fn block_stencil(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .matrix
            .entries()
            .iter()
            .map(|&(r, c, _)| {
                let (lo, _) = self.codomain.trunc.mode(r).unwrap();
                let (li, _) = self.domain.trunc.mode(c).unwrap();
                (lo, li)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct `Δl = l_out - l_in` values present.
    pub fn delta_l(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.block_stencil().iter().map(|&(o, i)| o as i64 - i as i64).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// For each flat index of `from`, its index in `to` if the mode survives.
fn mode_map(from: &Truncation, to: &Truncation) -> Vec<Option<usize>> {
    from.modes().map(|(l, k)| to.index(l, k)).collect()
}
