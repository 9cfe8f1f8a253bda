//! The representation on a common space `H` generated from subgroup blocks.
//!
//! Each block pairs a subgroup `G^a` with an isometry `U^a: H → L²(Φ)` whose
//! range is invariant under `G^a`. A word `g = g₁g₂…g_k` with `g_i` in the
//! block `a_i` is mapped to the product of the compressed factors
//! `U^{a_i†} M(g_i) U^{a_i}`, ordered to match the push-forward convention
//! `M(g₁g₂) = M(g₂)M(g₁)`. Different words for the same element need not give
//! the same matrix; [`GeneratedRepresentation::word_discrepancy`] measures it.

use super::{Representation, REP_TOL};
use crate::group::Subgroup;
use crate::linalg::{isometry_residual, max_abs_diff, unitarity_residual, CMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SubgroupBlock {
    pub subgroup: Subgroup,
    /// Ambient-dimension × `dim H` matrix with orthonormal columns.
    pub connector: CMatrix,
}

#[derive(Debug, Clone)]
pub struct GeneratedRepresentation<'a> {
    rep: &'a Representation,
    blocks: Vec<SubgroupBlock>,
    dim: usize,
}

impl<'a> GeneratedRepresentation<'a> {
    pub fn new(rep: &'a Representation, blocks: Vec<SubgroupBlock>) -> Result<Self> {
        let dim = blocks
            .first()
            .map(|b| b.connector.ncols())
            .ok_or_else(|| Error::InvalidRepresentation("no subgroup blocks".into()))?;
        for b in &blocks {
            if b.connector.shape() != (rep.dim(), dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.connector.ncols(),
                });
            }
            let r = isometry_residual(&b.connector);
            if r > REP_TOL {
                return Err(Error::NotOrthonormal { residual: r });
            }
        }
        Ok(Self { rep, blocks, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `U^{a†} M(g) U^a`; fails when `g ∉ G^a` or the block's range is not invariant under `g`.
    pub fn factor(&self, block: usize, g: usize) -> Result<CMatrix> {
        let b = self.blocks.get(block).ok_or(Error::DimensionMismatch {
            expected: self.blocks.len(),
            found: block,
        })?;
        if !b.subgroup.contains(g) {
            return Err(Error::NotASubgroup);
        }
        let f = b.connector.adjoint() * self.rep.matrix(g) * &b.connector;
        let r = unitarity_residual(&f);
        if r > REP_TOL {
            return Err(Error::NonUnitary { residual: r });
        }
        Ok(f)
    }

    /// Group element of a word, multiplied left to right.
    pub fn element(&self, word: &[(usize, usize)]) -> usize {
        let g = self.rep.group();
        word.iter().fold(g.identity(), |acc, &(_, x)| g.mul(acc, x))
    }

    /// Matrix of the word `[(block, element), …]`.
    pub fn word(&self, word: &[(usize, usize)]) -> Result<CMatrix> {
        let mut w = CMatrix::identity(self.dim, self.dim);
        for &(block, g) in word {
            w = self.factor(block, g)? * w;
        }
        Ok(w)
    }

    /// Largest entrywise difference between two words' matrices. Fails if
    /// the words multiply to different elements.
    pub fn word_discrepancy(&self, w1: &[(usize, usize)], w2: &[(usize, usize)]) -> Result<f64> {
        if self.element(w1) != self.element(w2) {
            return Err(Error::InvalidRepresentation("words name different elements".into()));
        }
        Ok(max_abs_diff(&self.word(w1)?, &self.word(w2)?))
    }
}
