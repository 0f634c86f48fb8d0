use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Block, BlockSpace, GeneralizedEVP, PhysicalParams, ProblemKind};
use crate::basis::{SpaceTag, Truncation};
use crate::error::{Error, Result};
use crate::operators::AssembledOperator;
use crate::sparse::CooMatrix;

/// Block layout accumulator. Blocks are added in order; matrices are filled
/// by `(equation, variable)` index.
#[derive(Default)]
pub(crate) struct SystemBuilder {
    vars: Vec<Block>,
    eqs: Vec<Block>,
    l: Vec<(usize, usize, CooMatrix)>,
    mass: Vec<(usize, usize, CooMatrix)>,
}

fn push(blocks: &mut Vec<Block>, name: &str, space: BlockSpace, size: usize) -> usize {
    let offset = blocks.last().map_or(0, |b| b.offset + b.size);
    blocks.push(Block { name: name.to_string(), space, offset, size });
    blocks.len() - 1
}

impl SystemBuilder {
    pub fn field(&mut self, name: &str, tag: SpaceTag) -> usize {
        push(&mut self.vars, name, BlockSpace::Field(tag), tag.size())
    }

    pub fn tau(&mut self, name: &str, size: usize) -> usize {
        push(&mut self.vars, name, BlockSpace::Auxiliary, size)
    }

    pub fn equation(&mut self, name: &str, tag: SpaceTag) -> usize {
        push(&mut self.eqs, name, BlockSpace::Field(tag), tag.size())
    }

    pub fn rows(&mut self, name: &str, size: usize) -> usize {
        push(&mut self.eqs, name, BlockSpace::Auxiliary, size)
    }

    fn check(&self, eq: usize, var: usize, m: &CooMatrix) -> Result<()> {
        let (e, v) = (&self.eqs[eq], &self.vars[var]);
        if m.shape() != (e.size, v.size) {
            return Err(Error::Assembly(alloc::format!(
                "block ({}, {}) expects {}x{}, got {}x{}",
                e.name,
                v.name,
                e.size,
                v.size,
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(())
    }

    fn check_tags(&self, eq: usize, var: usize, op: &AssembledOperator) -> Result<()> {
        if let BlockSpace::Field(t) = self.vars[var].space {
            if t != op.domain {
                return Err(Error::TagMismatch { expected: t.label(), found: op.domain.label() });
            }
        }
        if let BlockSpace::Field(t) = self.eqs[eq].space {
            if t != op.codomain {
                return Err(Error::TagMismatch { expected: t.label(), found: op.codomain.label() });
            }
        }
        Ok(())
    }

    pub fn l_matrix(&mut self, eq: usize, var: usize, m: CooMatrix) -> Result<()> {
        self.check(eq, var, &m)?;
        self.l.push((eq, var, m));
        Ok(())
    }

    pub fn l_op(&mut self, eq: usize, var: usize, op: &AssembledOperator, scale: Complex64) -> Result<()> {
        self.check_tags(eq, var, op)?;
        self.l_matrix(eq, var, op.matrix.scale(scale))
    }

    pub fn m_op(&mut self, eq: usize, var: usize, op: &AssembledOperator, scale: Complex64) -> Result<()> {
        self.check_tags(eq, var, op)?;
        let m = op.matrix.scale(scale);
        self.check(eq, var, &m)?;
        self.mass.push((eq, var, m));
        Ok(())
    }

    pub fn finish(
        self,
        kind: ProblemKind,
        m: u32,
        trunc: Truncation,
        params: Option<PhysicalParams>,
    ) -> Result<GeneralizedEVP> {
        let nv: usize = self.vars.iter().map(|b| b.size).sum();
        let ne: usize = self.eqs.iter().map(|b| b.size).sum();
        if nv != ne {
            return Err(Error::Dimension { expected: nv, found: ne });
        }
        let assemble = |parts: &[(usize, usize, CooMatrix)]| -> Result<CooMatrix> {
            let mut out = CooMatrix::new(ne, nv);
            for (e, v, block) in parts {
                out.add_block(self.eqs[*e].offset, self.vars[*v].offset, block)?;
            }
            out.canonicalize();
            Ok(out)
        };
        Ok(GeneralizedEVP {
            kind,
            m,
            trunc,
            params,
            l: assemble(&self.l)?,
            mass: assemble(&self.mass)?,
            variables: self.vars,
            equations: self.eqs,
        })
    }
}
