//! Representations on `L²(Φ, ν)`, the spaces `V^a` of functions of a
//! parameter, indicator bases, multiplication operators and their
//! conjugates.
//!
//! Vectors are stored in ν-orthonormal coordinates: a function `f` on `Φ`
//! is the vector `c[x] = √ν(x) f(x)`, so the weighted inner product
//! `Σ ν(x) f̄(x) h(x)` is the ordinary `c_f† c_h`.
//!
//! Representation matrices follow the push-forward convention
//! `M(g) δ_x = δ_{x·g}`. For a right action this gives
//! `M(g₁g₂) = M(g₂) M(g₁)`, and `M(g)` is the adjoint of the function-space
//! operator `f ↦ f(·g)`.

mod decompose;
mod word;

use num_complex::Complex64;
use serde::Serialize;

use crate::group::{FiniteGroup, GroupAction, InvariantMeasure, ParameterFunction};
use crate::json::{matrix_to_pairs, vector_to_pairs, ComplexPair};
use crate::linalg::{
    from_columns, hermitian_eigen, hermitian_residual, max_abs_diff, outer, re, unitarity_residual, CMatrix, CVector,
};
use crate::{Error, Result};

pub use decompose::{
    decompose_irreducible, invariance_residual, schur_check, sector_decomposition, SchurClass, Sector,
    SectorDecomposition, SectorMembership, SECTOR_WEIGHT_TOL,
};
pub use word::{GeneratedRepresentation, SubgroupBlock};

/// Residual allowed in representation and orthonormality checks.
pub const REP_TOL: f64 = 1e-10;

/// Matrices `M(g)` for every element of a finite group, satisfying
/// `M(e) = I`, `M(g₁g₂) = M(g₂)M(g₁)` and unitarity within [`REP_TOL`].
#[derive(Debug, Clone)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    pub fn new(group: FiniteGroup, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidRepresentation(
                "matrices must share a square shape".into(),
            ));
        }
        let rep = Self { group, dim, matrices };
        let (comp, unit) = rep.residuals();
        if comp > REP_TOL || unit > REP_TOL {
            return Err(Error::InvalidRepresentation(format!(
                "composition residual {comp:e}, unitarity residual {unit:e}"
            )));
        }
        Ok(rep)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `(composition, unitarity)` residuals, the first including `M(e) = I`.
    pub fn residuals(&self) -> (f64, f64) {
        let g = &self.group;
        let id = CMatrix::identity(self.dim, self.dim);
        let mut comp = max_abs_diff(&self.matrices[g.identity()], &id);
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.matrices[g.mul(a, b)];
                let rhs = &self.matrices[b] * &self.matrices[a];
                comp = comp.max(max_abs_diff(lhs, &rhs));
            }
        }
        let unit = self.matrices.iter().map(unitarity_residual).fold(0.0, f64::max);
        (comp, unit)
    }

    /// Traces `tr M(g)`.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Restriction to a subgroup, in the local indexing of
    /// [`crate::group::Subgroup::as_group`].
    pub fn restrict(&self, sub: &crate::group::Subgroup) -> Self {
        Self {
            group: sub.as_group(&self.group),
            dim: self.dim,
            matrices: sub.elements().iter().map(|&g| self.matrices[g].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> RepresentationDoc {
        RepresentationDoc {
            dim: self.dim,
            matrices: self.matrices.iter().map(matrix_to_pairs).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationDoc {
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<ComplexPair>>>,
}

/// An orthonormal list of vectors in a `dim`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    dim: usize,
    vectors: Vec<CVector>,
}

impl SubspaceBasis {
    pub fn new(dim: usize, vectors: Vec<CVector>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let basis = Self { dim, vectors };
        let r = basis.orthonormality_residual();
        if r > REP_TOL {
            return Err(Error::NotOrthonormal { residual: r });
        }
        Ok(basis)
    }

    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        Self::new(m.nrows(), m.column_iter().map(|c| c.into_owned()).collect())
    }

    pub fn standard(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| CVector::from_fn(dim, |j, _| re(f64::from(u8::from(i == j)))))
            .collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> CMatrix {
        from_columns(self.dim, &self.vectors)
    }

    pub fn projector(&self) -> CMatrix {
        let q = self.matrix();
        &q * q.adjoint()
    }

    pub fn orthonormality_residual(&self) -> f64 {
        let q = self.matrix();
        max_abs_diff(&(q.adjoint() * &q), &CMatrix::identity(self.len(), self.len()))
    }

    /// `‖v − P v‖` for the orthogonal projector `P` onto the span.
    pub fn distance(&self, v: &CVector) -> f64 {
        (v - self.projector() * v).norm()
    }

    /// Largest [`SubspaceBasis::distance`] of any vector of `other`.
    pub fn span_residual(&self, other: &SubspaceBasis) -> f64 {
        let p = self.projector();
        other.vectors.iter().map(|v| (v - &p * v).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> BasisDoc {
        BasisDoc {
            dim: self.dim,
            vectors: self.vectors.iter().map(vector_to_pairs).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisDoc {
    pub dim: usize,
    pub vectors: Vec<Vec<ComplexPair>>,
}

/// A complex Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let r = hermitian_residual(&matrix);
        if r > 1e-12 {
            return Err(Error::NonHermitian { residual: r });
        }
        Ok(Self { matrix })
    }

    /// Hermitian part `(M + M†)/2` of a matrix already known to be Hermitian up to rounding.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        Self {
            matrix: (&m + m.adjoint()).scale(0.5),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues ascending, eigenvectors as matching columns.
    pub fn eigen(&self) -> (Vec<f64>, CMatrix) {
        hermitian_eigen(&self.matrix)
    }

    pub fn spectrum(&self) -> Vec<f64> {
        self.eigen().0
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// The regular representation `f ↦ f(·g)` in ν-orthonormal coordinates,
/// stored with the push-forward convention described in the module docs.
pub fn regular_representation(action: &GroupAction, nu: &InvariantMeasure) -> Result<Representation> {
    if nu.len() != action.space_size() {
        return Err(Error::DimensionMismatch {
            expected: action.space_size(),
            found: nu.len(),
        });
    }
    if !nu.is_invariant(action) {
        return Err(Error::NonInvariantMeasure);
    }
    let n = action.space_size();
    let matrices = action
        .table()
        .iter()
        .map(|row| {
            let mut m = CMatrix::zeros(n, n);
            for (x, &y) in row.iter().enumerate() {
                m[(y, x)] = re(1.0);
            }
            m
        })
        .collect();
    Representation::new(action.group().clone(), matrices)
}

fn check_measure(lambda: &ParameterFunction, nu: &InvariantMeasure) -> Result<()> {
    if nu.len() != lambda.space_size() {
        return Err(Error::DimensionMismatch {
            expected: lambda.space_size(),
            found: nu.len(),
        });
    }
    Ok(())
}

/// Orthonormal basis of `V = {f : f(φ) = f̃(λ(φ))}`: one normalized level-set
/// indicator per value, in value-set order.
pub fn invariant_subspace_va(lambda: &ParameterFunction, nu: &InvariantMeasure) -> Result<SubspaceBasis> {
    check_measure(lambda, nu)?;
    let n = lambda.space_size();
    let vectors = lambda
        .level_sets()
        .iter()
        .map(|level| {
            let mass = nu.mass(level);
            if mass <= 0.0 {
                return Err(Error::InvalidMeasure("a level set has zero mass".into()));
            }
            let mut v = CVector::zeros(n);
            for &x in level {
                v[x] = re((nu.weights()[x] / mass).sqrt());
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    SubspaceBasis::new(n, vectors)
}

/// The functions `f_k(φ) = √n·1(λ(φ) = λ_k)` in ν-orthonormal coordinates.
///
/// Requires every level set to carry mass `1/n`.
pub fn indicator_basis(lambda: &ParameterFunction, nu: &InvariantMeasure) -> Result<SubspaceBasis> {
    check_measure(lambda, nu)?;
    let k = lambda.value_count();
    let target = 1.0 / k as f64;
    let levels = lambda.level_sets();
    if levels.iter().any(|l| (nu.mass(l) - target).abs() > 1e-12) {
        return Err(Error::UnequalLevelSets);
    }
    let scale = (k as f64).sqrt();
    let vectors = levels
        .iter()
        .map(|level| {
            let mut v = CVector::zeros(lambda.space_size());
            for &x in level {
                v[x] = re(nu.weights()[x].sqrt() * scale);
            }
            v
        })
        .collect();
    SubspaceBasis::new(lambda.space_size(), vectors)
}

/// Convert ν-orthonormal coordinates back to function values `f(x) = c[x]/√ν(x)`.
pub fn function_values(v: &CVector, nu: &InvariantMeasure) -> Vec<Complex64> {
    v.iter().zip(nu.weights()).map(|(c, &w)| c / w.sqrt()).collect()
}

/// Multiplication by a real coding of `λ`, acting on `V` and zero on its complement.
#[derive(Debug, Clone)]
pub struct MultiplicationOperator {
    operator: HermitianOperator,
    basis: SubspaceBasis,
    eigenvalues: Vec<f64>,
}

impl MultiplicationOperator {
    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    /// Eigenvectors `f_k`, one per value.
    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    /// Coding of each value, in value-set order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Matrix of the operator in its own eigenbasis.
    pub fn compressed(&self) -> CMatrix {
        let q = self.basis.matrix();
        q.adjoint() * self.operator.matrix() * q
    }
}

/// The coding `λ_k ↦ k` in value-set order.
pub fn default_embedding(lambda: &ParameterFunction) -> Vec<f64> {
    (0..lambda.value_count()).map(|k| k as f64).collect()
}

/// `S f(λ) = λ f(λ)` on `V`, with `λ` coded by `embedding`.
pub fn multiplication_operator(
    lambda: &ParameterFunction,
    embedding: &[f64],
    nu: &InvariantMeasure,
) -> Result<MultiplicationOperator> {
    if embedding.len() != lambda.value_count() {
        return Err(Error::DimensionMismatch {
            expected: lambda.value_count(),
            found: embedding.len(),
        });
    }
    let mut sorted = embedding.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateCoding);
    }
    let basis = invariant_subspace_va(lambda, nu)?;
    let operator = spectral_operator(embedding, &basis)?;
    Ok(MultiplicationOperator {
        operator,
        basis,
        eigenvalues: embedding.to_vec(),
    })
}

/// `Σ_k λ_k v_k v_k†`.
pub fn spectral_operator(eigenvalues: &[f64], vectors: &SubspaceBasis) -> Result<HermitianOperator> {
    if eigenvalues.len() != vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: vectors.len(),
            found: eigenvalues.len(),
        });
    }
    let mut m = CMatrix::zeros(vectors.dim(), vectors.dim());
    for (&l, v) in eigenvalues.iter().zip(vectors.vectors()) {
        m += outer(v).scale(l);
    }
    Ok(HermitianOperator::symmetrized(m))
}

fn check_unitary(w: &CMatrix, dim: usize) -> Result<()> {
    if w.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: w.nrows(),
        });
    }
    let r = unitarity_residual(w);
    if r > REP_TOL {
        return Err(Error::NonUnitary { residual: r });
    }
    Ok(())
}

/// `T = W S W†`.
pub fn conjugated_operator(s: &HermitianOperator, w: &CMatrix) -> Result<HermitianOperator> {
    check_unitary(w, s.dim())?;
    Ok(HermitianOperator::symmetrized(w * s.matrix() * w.adjoint()))
}

/// `v_k = W f_k`.
pub fn transported_basis(basis: &SubspaceBasis, w: &CMatrix) -> Result<SubspaceBasis> {
    check_unitary(w, basis.dim())?;
    SubspaceBasis::new(basis.dim(), basis.vectors().iter().map(|f| w * f).collect())
}

/// Whether `M(g) f_k` is an eigenvector of `S` with eigenvalue `coding(λ_k·g)`
/// for every element `g` and every value `k`, within 1e-10.
///
/// `value_action` is the induced action on values (see
/// [`crate::group::induced_parameter_action`]) and must be an action of the
/// same group as `rep`.
pub fn eigen_transport_check(
    rep: &Representation,
    s: &MultiplicationOperator,
    value_action: &GroupAction,
) -> Result<bool> {
    if value_action.group().order() != rep.group().order() {
        return Err(Error::DimensionMismatch {
            expected: rep.group().order(),
            found: value_action.group().order(),
        });
    }
    if value_action.space_size() != s.eigenvalues().len() || s.basis().dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.eigenvalues().len(),
            found: value_action.space_size(),
        });
    }
    let op = s.operator().matrix();
    Ok(rep.group().elements().all(|g| {
        s.basis().vectors().iter().enumerate().all(|(k, f)| {
            let v = rep.matrix(g) * f;
            let lambda = s.eigenvalues()[value_action.apply(k, g)];
            v.norm() > 0.5 && (op * &v - v.scale(lambda)).norm() < REP_TOL
        })
    }))
}

#[cfg(test)]
mod tests;
