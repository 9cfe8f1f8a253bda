//! Irreducible decomposition by commutant averaging, Schur classification of
//! intertwiners, and superselection sectors.

use rand::Rng;
use serde::Serialize;

use super::{Representation, SubspaceBasis, REP_TOL};
use crate::linalg::{hermitian_eigen, max_abs_diff, random_hermitian, CMatrix, CVector};

/// Eigenvalues of the averaged matrix closer than this belong to one block.
const CLUSTER_TOL: f64 = 1e-8;
/// A block is accepted as irreducible once the averaged random Hermitian
/// restricted to it has eigenvalue variance below this.
const SCALAR_VARIANCE_TOL: f64 = 1e-8;

/// Splits the representation space into mutually orthogonal irreducible
/// invariant subspaces, returned in order of increasing dimension.
///
/// Each step averages a random Hermitian matrix over the group,
/// `R = |G|⁻¹ Σ_g M(g) H M(g)†`, which commutes with every `M(g)`; its
/// eigenspaces are invariant. A block is split again until the averaged
/// matrix is scalar on it.
pub fn decompose_irreducible<R: Rng + ?Sized>(rep: &Representation, rng: &mut R) -> Vec<SubspaceBasis> {
    let mut out = Vec::new();
    split(rep, CMatrix::identity(rep.dim(), rep.dim()), rng, &mut out);
    out.sort_by_key(|q| q.ncols());
    out.into_iter()
        .map(|q| SubspaceBasis::from_matrix(&q).expect("eigenvectors are orthonormal"))
        .collect()
}

fn split<R: Rng + ?Sized>(rep: &Representation, q: CMatrix, rng: &mut R, out: &mut Vec<CMatrix>) {
    let m = q.ncols();
    if m == 1 {
        out.push(q);
        return;
    }
    // the span of q is invariant, so compressing each M(g) gives the restricted representation
    let h0 = random_hermitian(rng, m);
    let mut r = CMatrix::zeros(m, m);
    for g in rep.matrices() {
        let block = q.adjoint() * g * &q;
        r += &block * &h0 * block.adjoint();
    }
    r.unscale_mut(rep.group().order() as f64);
    let r = (&r + r.adjoint()).scale(0.5);
    let (vals, vecs) = hermitian_eigen(&r);

    let mean = vals.iter().sum::<f64>() / m as f64;
    let variance = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m as f64;
    if variance < SCALAR_VARIANCE_TOL {
        out.push(q);
        return;
    }
    let mut start = 0;
    for end in 1..=m {
        if end == m || vals[end] - vals[end - 1] > CLUSTER_TOL {
            let cols = vecs.columns(start, end - start);
            split(rep, &q * cols, rng, out);
            start = end;
        }
    }
}

/// `max_g |M(g)P − P M(g)|` for the projector `P` onto `basis`.
pub fn invariance_residual(rep: &Representation, basis: &SubspaceBasis) -> f64 {
    let p = basis.projector();
    rep.matrices()
        .iter()
        .map(|m| max_abs_diff(&(m * &p), &(&p * m)))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurClass {
    Zero,
    Isomorphism,
    /// The intertwining identity fails, or a nonzero intertwiner is singular
    /// (only possible when an input is reducible).
    Violation,
}

/// Classifies `A: H₂ → H₁` with `M₁(g) A = A M₂(pairing[g])` for all `g` of
/// `rep1`'s group.
pub fn schur_check(rep1: &Representation, rep2: &Representation, a: &CMatrix, pairing: &[usize]) -> SchurClass {
    if a.shape() != (rep1.dim(), rep2.dim())
        || pairing.len() != rep1.group().order()
        || pairing.iter().any(|&g| g >= rep2.group().order())
    {
        return SchurClass::Violation;
    }
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = rep1
        .group()
        .elements()
        .map(|g| max_abs_diff(&(rep1.matrix(g) * a), &(a * rep2.matrix(pairing[g]))))
        .fold(0.0, f64::max);
    if residual > REP_TOL * scale {
        return SchurClass::Violation;
    }
    if a.iter().all(|z| z.norm() < REP_TOL) {
        return SchurClass::Zero;
    }
    if a.is_square() && a.clone().singular_values().min() > REP_TOL {
        SchurClass::Isomorphism
    } else {
        SchurClass::Violation
    }
}

/// Probability weight below which a sector is treated as absent from a vector.
pub const SECTOR_WEIGHT_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Sector {
    pub label: usize,
    pub basis: SubspaceBasis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectorMembership {
    Zero,
    PureSector {
        label: usize,
    },
    /// Superposition across sectors; not a state vector.
    CrossSector {
        labels: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct SectorDecomposition {
    pub sectors: Vec<Sector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorSummary {
    pub sectors: Vec<SectorEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorEntry {
    pub dim: usize,
    pub label: usize,
}

impl SectorDecomposition {
    /// Share `‖P_i v‖² / ‖v‖²` of each sector.
    pub fn weights(&self, v: &CVector) -> Vec<f64> {
        let total = v.norm_squared();
        self.sectors
            .iter()
            .map(|s| {
                let p: f64 = s.basis.vectors().iter().map(|b| b.dotc(v).norm_sqr()).sum();
                if total > 0.0 {
                    p / total
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn classify(&self, v: &CVector) -> SectorMembership {
        if v.norm() < REP_TOL {
            return SectorMembership::Zero;
        }
        let labels: Vec<usize> = self
            .weights(v)
            .iter()
            .zip(&self.sectors)
            .filter(|(&w, _)| w > SECTOR_WEIGHT_TOL)
            .map(|(_, s)| s.label)
            .collect();
        match labels.as_slice() {
            [label] => SectorMembership::PureSector { label: *label },
            _ => SectorMembership::CrossSector { labels },
        }
    }

    pub fn summary(&self) -> SectorSummary {
        SectorSummary {
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorEntry {
                    dim: s.basis.len(),
                    label: s.label,
                })
                .collect(),
        }
    }
}

/// [`decompose_irreducible`] with each block labeled as a superselection sector.
pub fn sector_decomposition<R: Rng + ?Sized>(rep: &Representation, rng: &mut R) -> SectorDecomposition {
    let sectors = decompose_irreducible(rep, rng)
        .into_iter()
        .enumerate()
        .map(|(label, basis)| Sector { label, basis })
        .collect();
    SectorDecomposition { sectors }
}
