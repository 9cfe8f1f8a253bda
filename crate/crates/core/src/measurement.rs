//! Density matrices, operator-valued measures over finite outcome sets and
//! the projection update.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{HermitianOperator, SubspaceBasis};
use crate::json::MatrixDoc;
use crate::linalg::{hermitian_eigen, hermitian_residual, max_abs_diff, outer, re, CMatrix, CVector};
use crate::statmodel::StatisticalModel;

/// Hermiticity and trace tolerance.
pub const STATE_TOL: f64 = 1e-12;
/// Lowest eigenvalue accepted as nonnegative.
pub const PSD_TOL: f64 = 1e-10;

/// Positive operator with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDensity("matrix must be square and nonempty".into()));
        }
        let h = hermitian_residual(&matrix);
        if h > STATE_TOL {
            return Err(Error::InvalidDensity(format!("hermiticity residual {h:e}")));
        }
        let tr = matrix.trace();
        if (tr - re(1.0)).norm() > STATE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let (vals, _) = hermitian_eigen(&matrix);
        if vals[0] < -PSD_TOL {
            return Err(Error::InvalidDensity(format!("eigenvalue {:e}", vals[0])));
        }
        Ok(Self { matrix })
    }

    /// `v v†` for a unit vector.
    pub fn pure(v: &CVector) -> Result<Self> {
        check_unit(v)?;
        Self::new(outer(v))
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc::from(&self.matrix).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        CMatrix::try_from(&doc)
            .and_then(Self::new)
            .map_err(serde::de::Error::custom)
    }
}

/// A state given either as a unit vector or as a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Vector(CVector),
    Density(DensityMatrix),
}

impl State {
    pub fn dim(&self) -> usize {
        match self {
            State::Vector(v) => v.len(),
            State::Density(rho) => rho.dim(),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            State::Vector(v) => DensityMatrix::pure(v),
            State::Density(rho) => Ok(rho.clone()),
        }
    }
}

impl From<CVector> for State {
    fn from(v: CVector) -> Self {
        State::Vector(v)
    }
}

impl From<DensityMatrix> for State {
    fn from(rho: DensityMatrix) -> Self {
        State::Density(rho)
    }
}

/// PSD operators indexed by a finite outcome set, summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorValuedMeasure {
    outcomes: Vec<String>,
    operators: Vec<CMatrix>,
}

#[derive(Serialize, Deserialize)]
struct MeasureDoc {
    outcomes: Vec<String>,
    operators: Vec<MatrixDoc>,
}

impl OperatorValuedMeasure {
    pub fn new(outcomes: Vec<String>, operators: Vec<CMatrix>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMeasureOperators(m));
        if outcomes.len() != operators.len() || operators.is_empty() {
            return bad(format!("{} outcomes for {} operators", outcomes.len(), operators.len()));
        }
        let dim = operators[0].nrows();
        let mut total = CMatrix::zeros(dim, dim);
        for (name, m) in outcomes.iter().zip(&operators) {
            if m.shape() != (dim, dim) {
                return bad(format!("operator {name} has shape {:?}", m.shape()));
            }
            let h = hermitian_residual(m);
            if h > PSD_TOL {
                return bad(format!("operator {name} not Hermitian ({h:e})"));
            }
            let (vals, _) = hermitian_eigen(m);
            if vals[0] < -PSD_TOL {
                return bad(format!("operator {name} has eigenvalue {:e}", vals[0]));
            }
            total += m;
        }
        let r = max_abs_diff(&total, &CMatrix::identity(dim, dim));
        if r > PSD_TOL {
            return bad(format!("operators sum to identity only within {r:e}"));
        }
        Ok(Self { outcomes, operators })
    }

    /// Rank-one projectors onto an orthonormal basis of the whole space.
    pub fn projective(basis: &SubspaceBasis) -> Result<Self> {
        check_complete(basis)?;
        let outcomes = (0..basis.len()).map(|j| format!("y{j}")).collect();
        Self::new(outcomes, basis.vectors().iter().map(outer).collect())
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    /// `M(A) = Σ_{y∈A} M(y)`.
    pub fn of_set(&self, set: &[usize]) -> CMatrix {
        let d = self.dim();
        set.iter()
            .fold(CMatrix::zeros(d, d), |acc, &y| acc + &self.operators[y])
    }

    pub fn completeness_residual(&self) -> f64 {
        let all: Vec<usize> = (0..self.operators.len()).collect();
        max_abs_diff(&self.of_set(&all), &CMatrix::identity(self.dim(), self.dim()))
    }
}

impl Serialize for OperatorValuedMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureDoc {
            outcomes: self.outcomes.clone(),
            operators: self.operators.iter().map(MatrixDoc::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorValuedMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MeasureDoc::deserialize(d)?;
        let ops = doc
            .operators
            .iter()
            .map(CMatrix::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Self::new(doc.outcomes, ops).map_err(serde::de::Error::custom)
    }
}

fn check_unit(v: &CVector) -> Result<()> {
    let n = v.norm();
    if (n - 1.0).abs() > STATE_TOL {
        return Err(Error::NotNormalized { norm: n });
    }
    Ok(())
}

fn check_complete(basis: &SubspaceBasis) -> Result<()> {
    if basis.len() != basis.dim() {
        return Err(Error::IncompleteBasis {
            dim: basis.dim(),
            found: basis.len(),
        });
    }
    Ok(())
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `v†Tv` for a unit vector `v`.
pub fn expectation(v: &CVector, t: &HermitianOperator) -> Result<f64> {
    check_unit(v)?;
    check_dim(t.dim(), v.len())?;
    Ok(v.dotc(&(t.matrix() * v)).re)
}

/// Spectral calculus: `f(T) = Σ f(λ_j) v_j v_j†`.
pub fn function_of_operator(t: &HermitianOperator, f: impl Fn(f64) -> f64) -> HermitianOperator {
    let (vals, vecs) = t.eigen();
    let d = t.dim();
    let mut m = CMatrix::zeros(d, d);
    for (j, &l) in vals.iter().enumerate() {
        m += outer(&vecs.column(j).into_owned()) * re(f(l));
    }
    HermitianOperator::symmetrized(m)
}

/// `M(y) = Σ_j P(y | λ_j) v_j v_j†`, one basis vector per parameter value.
pub fn povm_from_model(model: &StatisticalModel, basis: &SubspaceBasis) -> Result<OperatorValuedMeasure> {
    check_dim(model.params().len(), basis.len())?;
    check_complete(basis)?;
    let projectors: Vec<CMatrix> = basis.vectors().iter().map(outer).collect();
    let d = basis.dim();
    let operators = (0..model.outcomes().len())
        .map(|y| {
            projectors
                .iter()
                .enumerate()
                .fold(CMatrix::zeros(d, d), |acc, (j, p)| acc + p * re(model.prob(j, y)))
        })
        .collect();
    OperatorValuedMeasure::new(model.outcomes().to_vec(), operators)
}

/// `P[y] = v†M(y)v` or `tr(ρM(y))`.
pub fn outcome_distribution(state: &State, m: &OperatorValuedMeasure) -> Result<Vec<f64>> {
    check_dim(m.dim(), state.dim())?;
    match state {
        State::Vector(v) => {
            check_unit(v)?;
            Ok(m.operators().iter().map(|op| v.dotc(&(op * v)).re).collect())
        }
        State::Density(rho) => Ok(m.operators().iter().map(|op| (rho.matrix() * op).trace().re).collect()),
    }
}

/// `ρ = Σ_k w_k v_k v_k†`.
pub fn density_from_mixture(weights: &[f64], vectors: &[CVector]) -> Result<DensityMatrix> {
    if weights.len() != vectors.len() || vectors.is_empty() {
        return Err(Error::InvalidProbability(format!(
            "{} weights for {} vectors",
            weights.len(),
            vectors.len()
        )));
    }
    if let Some(w) = weights.iter().find(|&&w| w.is_nan() || w < 0.0) {
        return Err(Error::InvalidProbability(format!("negative weight {w}")));
    }
    let s: f64 = weights.iter().sum();
    if (s - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidProbability(format!("weights sum to {s}")));
    }
    let d = vectors[0].len();
    let mut m = CMatrix::zeros(d, d);
    for (w, v) in weights.iter().zip(vectors) {
        check_dim(d, v.len())?;
        check_unit(v)?;
        m += outer(v) * re(*w);
    }
    DensityMatrix::new(m)
}

/// `Σ_j P_j ρ P_j` with `P_j = v_j v_j†` over a complete orthonormal basis.
pub fn von_neumann_update(state: &State, basis: &SubspaceBasis) -> Result<DensityMatrix> {
    check_dim(basis.dim(), state.dim())?;
    check_complete(basis)?;
    let rho = state.to_density()?;
    let d = basis.dim();
    let mut out = CMatrix::zeros(d, d);
    for v in basis.vectors() {
        let p = outer(v);
        out += &p * rho.matrix() * &p;
    }
    DensityMatrix::new((&out + out.adjoint()).scale(0.5))
}
