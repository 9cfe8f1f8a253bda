//! Finite statistical models `Q^λ(y)`, statistics `t(y)`, sufficiency,
//! completeness, and the expectation operator with its unitary factor.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::group::ParameterFunction;
use crate::{Error, Result};

/// Conditional distributions closer than this are considered equal.
pub const SUFFICIENCY_TOL: f64 = 1e-10;
/// Smallest singular value at or below which a map is treated as singular.
pub const RANK_TOL: f64 = 1e-10;

/// A row-stochastic table of outcome probabilities, one row per parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelDoc", into = "ModelDoc")]
pub struct StatisticalModel {
    params: Vec<String>,
    outcomes: Vec<String>,
    probs: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    params: Vec<String>,
    outcomes: Vec<String>,
    probs: Vec<Vec<f64>>,
}

impl TryFrom<ModelDoc> for StatisticalModel {
    type Error = Error;
    fn try_from(doc: ModelDoc) -> Result<Self> {
        StatisticalModel::new(doc.params, doc.outcomes, doc.probs)
    }
}

impl From<StatisticalModel> for ModelDoc {
    fn from(m: StatisticalModel) -> Self {
        let probs = m.probs.row_iter().map(|r| r.iter().copied().collect()).collect();
        ModelDoc {
            params: m.params,
            outcomes: m.outcomes,
            probs,
        }
    }
}

impl StatisticalModel {
    pub fn new(params: Vec<String>, outcomes: Vec<String>, probs: Vec<Vec<f64>>) -> Result<Self> {
        if params.is_empty() || outcomes.is_empty() {
            return Err(Error::InvalidModel("no parameters or no outcomes".into()));
        }
        if probs.len() != params.len() || probs.iter().any(|r| r.len() != outcomes.len()) {
            return Err(Error::InvalidModel(format!(
                "probability table must be {}×{}",
                params.len(),
                outcomes.len()
            )));
        }
        for (i, row) in probs.iter().enumerate() {
            if row.iter().any(|&p| p.is_nan() || p < 0.0) {
                return Err(Error::InvalidModel(format!("row {i} has a negative entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidModel(format!("row {i} sums to {s}")));
            }
        }
        let probs = DMatrix::from_fn(params.len(), outcomes.len(), |i, j| probs[i][j]);
        Ok(Self {
            params,
            outcomes,
            probs,
        })
    }

    /// Model with parameters and outcomes named by index.
    pub fn from_rows(probs: Vec<Vec<f64>>) -> Result<Self> {
        let params = (0..probs.len()).map(|i| format!("p{i}")).collect();
        let outcomes = (0..probs.first().map_or(0, Vec::len))
            .map(|j| format!("y{j}"))
            .collect();
        Self::new(params, outcomes, probs)
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn probs(&self) -> &DMatrix<f64> {
        &self.probs
    }

    pub fn prob(&self, param: usize, outcome: usize) -> f64 {
        self.probs[(param, outcome)]
    }
}

/// A reduction `t(y)` of the outcomes to a smaller set of values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistic {
    values: Vec<String>,
    of_outcome: Vec<usize>,
}

impl Statistic {
    /// `t(y) = y` on `n` outcomes.
    pub fn identity(n: usize) -> Self {
        Self {
            values: (0..n).map(|j| format!("t{j}")).collect(),
            of_outcome: (0..n).collect(),
        }
    }

    pub fn constant(n: usize) -> Self {
        Self {
            values: vec!["t".into()],
            of_outcome: vec![0; n],
        }
    }

    /// Statistic value per outcome, value set in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        let mut values: Vec<String> = Vec::new();
        let of_outcome = labels
            .iter()
            .map(|l| match values.iter().position(|v| v == l.as_ref()) {
                Some(k) => k,
                None => {
                    values.push(l.as_ref().to_owned());
                    values.len() - 1
                }
            })
            .collect();
        Self { values, of_outcome }
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    pub fn of_outcome(&self, y: usize) -> usize {
        self.of_outcome[y]
    }

    fn check_total(&self, model: &StatisticalModel) -> Result<()> {
        if self.of_outcome.len() != model.outcomes.len() {
            return Err(Error::DimensionMismatch {
                expected: model.outcomes.len(),
                found: self.of_outcome.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of a sufficiency check together with the statistic values that
/// have zero probability under some parameter; for those, conditionals were
/// compared only across the parameters that give them positive probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SufficiencyReport {
    pub sufficient: bool,
    pub zero_probability_values: Vec<String>,
}

pub fn sufficiency_report(model: &StatisticalModel, stat: &Statistic) -> Result<SufficiencyReport> {
    stat.check_total(model)?;
    let a = expectation_operator(model, stat)?;
    let mut sufficient = true;
    let mut flagged = Vec::new();
    for t0 in 0..stat.value_count() {
        let preimage: Vec<usize> = (0..model.outcomes.len())
            .filter(|&y| stat.of_outcome(y) == t0)
            .collect();
        let mut reference: Option<Vec<f64>> = None;
        let mut any_zero = false;
        for lam in 0..model.params.len() {
            let mass = a[(lam, t0)];
            if mass <= 0.0 {
                any_zero = true;
                continue;
            }
            let cond: Vec<f64> = preimage.iter().map(|&y| model.prob(lam, y) / mass).collect();
            match &reference {
                None => reference = Some(cond),
                Some(r) => {
                    if r.iter().zip(&cond).any(|(p, q)| (p - q).abs() > SUFFICIENCY_TOL) {
                        sufficient = false;
                    }
                }
            }
        }
        if any_zero {
            flagged.push(stat.values[t0].clone());
        }
    }
    Ok(SufficiencyReport {
        sufficient,
        zero_probability_values: flagged,
    })
}

/// Whether the conditional law of `y` given `t` is the same for every parameter.
pub fn is_sufficient(model: &StatisticalModel, stat: &Statistic) -> Result<bool> {
    Ok(sufficiency_report(model, stat)?.sufficient)
}

/// Whether `E^λ h(t) = 0` for every `λ` forces `h = 0`, i.e. the expectation
/// operator has trivial null space.
pub fn is_complete(model: &StatisticalModel, stat: &Statistic) -> Result<bool> {
    let a = expectation_operator(model, stat)?;
    if a.ncols() > a.nrows() {
        return Ok(false);
    }
    Ok(a.singular_values().min() > RANK_TOL)
}

/// `A[λ][t₀] = P(t = t₀ | λ)`. Applied to a function `h` of the statistic it
/// gives `λ ↦ E^λ h(t)`.
pub fn expectation_operator(model: &StatisticalModel, stat: &Statistic) -> Result<DMatrix<f64>> {
    stat.check_total(model)?;
    let mut a = DMatrix::zeros(model.params.len(), stat.value_count());
    for lam in 0..model.params.len() {
        for y in 0..model.outcomes.len() {
            a[(lam, stat.of_outcome(y))] += model.prob(lam, y);
        }
    }
    Ok(a)
}

/// Unitary factor `A (A†A)^{-1/2}` of the polar decomposition, computed from
/// the SVD `A = W Σ V†` as `W V†`.
///
/// For a tall `A` the result has orthonormal columns.
pub fn unitarize(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.ncols() > a.nrows() || a.is_empty() {
        return Err(Error::IncompleteStatistic);
    }
    let svd = a.clone().svd(true, true);
    if svd.singular_values.min() <= RANK_TOL {
        return Err(Error::IncompleteStatistic);
    }
    let w = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    Ok(w * v_t)
}

/// The error-free experiment for `λ`: outcomes are `λ`'s values, the
/// probability table is the identity and the statistic is `t(y) = y`.
pub fn perfect_model(lambda: &ParameterFunction) -> (StatisticalModel, Statistic) {
    let n = lambda.value_count();
    let values = lambda.value_set().to_vec();
    let probs = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let model = StatisticalModel::new(values.clone(), values.clone(), probs).expect("identity");
    let stat = Statistic::from_labels(&values);
    (model, stat)
}
