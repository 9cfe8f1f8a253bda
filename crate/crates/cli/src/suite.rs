//! Randomized invariant measurements shared by the `check` scenario and the
//! acceptance tests. Each function returns the worst residual it saw.

use rand::Rng;
use serde::Serialize;
use statsym_core::group::{
    check_group_table, generate_group, invariant_measure, is_permissible, maximal_permissible_subgroup, AxiomViolation,
    FiniteGroup, GroupAction, ParameterFunction, Subgroup,
};
use statsym_core::hilbert::HermitianOperator;
use statsym_core::hilbert::{decompose_irreducible, invariance_residual, regular_representation, Representation};
use statsym_core::linalg::{hermitian_eigen, max_abs_diff, random_hermitian, random_unit_vector, unitarity_residual};
use statsym_core::measurement::{
    expectation, outcome_distribution, povm_from_model, von_neumann_update, OperatorValuedMeasure, State,
};
use statsym_core::qubit::{
    born_amplitude, born_pure, born_trace, coin_mixture, complement_effect, effect_from_test, generalized_probability,
    test_from_effect, BlochVector,
};
use statsym_core::statmodel::{expectation_operator, is_complete, unitarize};
use statsym_core::Error;

use crate::fixtures::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BornStats {
    pub trace_residual: f64,
    pub amplitude_residual: f64,
    /// `P(a|a) = 1` held exactly for every sample.
    pub self_exact: bool,
    /// `P(−a|a) = 0` held exactly for every sample.
    pub antipode_exact: bool,
}

pub fn born_agreement<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BornStats {
    let mut s = BornStats {
        self_exact: true,
        antipode_exact: true,
        ..Default::default()
    };
    for _ in 0..n {
        let (a, b) = (BlochVector::random(rng), BlochVector::random(rng));
        let p = born_pure(&a, &b);
        s.trace_residual = s.trace_residual.max((born_trace(&a, &b) - p).abs());
        s.amplitude_residual = s.amplitude_residual.max((born_amplitude(&a, &b) - p).abs());
        s.self_exact &= born_pure(&a, &a) == 1.0;
        s.antipode_exact &= born_pure(&a, &-a) == 0.0;
    }
    s
}

/// `½(r±c)` against a numeric eigensolver.
pub fn effect_eigen_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let e = random_effect(rng);
            let (vals, _) = hermitian_eigen(&e.matrix());
            let (lo, hi) = e.eigenvalues();
            (vals[0] - lo).abs().max((vals[1] - hi).abs())
        })
        .fold(0.0, f64::max)
}

/// `effect_from_test ∘ test_from_effect` on random tests, compared in `+1` form.
pub fn round_trip_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..n {
        let spec = random_spec(rng);
        let e = effect_from_test(&spec);
        let Ok(back) = test_from_effect(&e) else {
            return f64::INFINITY;
        };
        let canon = spec.canonical();
        worst = worst
            .max((back.alpha() - canon.alpha()).abs())
            .max((back.beta() - canon.beta()).abs())
            .max((back.b().as_vector() - canon.b().as_vector()).norm());
        let again = effect_from_test(&back);
        worst = worst.max((again.r() - e.r()).abs()).max((again.cu() - e.cu()).norm());
    }
    worst
}

/// `π(E₁ + E₂) − π(E₁) − π(E₂)` over pairs with `E₁ + E₂ ≤ I`.
pub fn additivity_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let (e1, e2) = random_summable_pair(rng);
            let sum = e1.checked_add(&e2).expect("summable by construction");
            let a = BlochVector::random(rng);
            (generalized_probability(&a, &sum) - generalized_probability(&a, &e1) - generalized_probability(&a, &e2))
                .abs()
        })
        .fold(0.0, f64::max)
}

/// `π(coin_mixture(E₁, E₂)) − ½(π(E₁) + π(E₂))`.
pub fn coin_mixture_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let (e1, e2) = (random_effect(rng), random_effect(rng));
            let a = BlochVector::random(rng);
            let mean = 0.5 * (generalized_probability(&a, &e1) + generalized_probability(&a, &e2));
            (generalized_probability(&a, &coin_mixture(&e1, &e2)) - mean).abs()
        })
        .fold(0.0, f64::max)
}

pub fn complement_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let e = random_effect(rng);
            let a = BlochVector::random(rng);
            (generalized_probability(&a, &e) + generalized_probability(&a, &complement_effect(&e)) - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Born and generalized probabilities under a common rotation.
pub fn rotation_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let (a, b, e) = (BlochVector::random(rng), BlochVector::random(rng), random_effect(rng));
            let rot = random_rotation(rng);
            let born = (born_pure(&a.rotate(&rot), &b.rotate(&rot)) - born_pure(&a, &b)).abs();
            let pi =
                (generalized_probability(&a.rotate(&rot), &e.rotate(&rot)) - generalized_probability(&a, &e)).abs();
            born.max(pi)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MeasureStats {
    pub completeness: f64,
    pub additivity: f64,
    pub distribution_sum: f64,
    pub most_negative: f64,
}

/// Operator-valued measures from random row-stochastic models on random bases.
pub fn measure_stats<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MeasureStats {
    let mut s = MeasureStats::default();
    for _ in 0..n {
        let d = rng.random_range(2..6);
        let n_out = rng.random_range(2..6);
        let model =
            statsym_core::statmodel::StatisticalModel::from_rows(random_stochastic(rng, d, n_out)).expect("stochastic");
        let m = match povm_from_model(&model, &random_basis(rng, d)) {
            Ok(m) => m,
            Err(_) => {
                return MeasureStats {
                    completeness: f64::INFINITY,
                    ..s
                }
            }
        };
        s.completeness = s.completeness.max(m.completeness_residual());
        s.additivity = s.additivity.max(split_additivity(rng, &m));
        for state in [
            State::Density(random_density(rng, d)),
            State::Vector(random_unit_vector(rng, d)),
        ] {
            let p = outcome_distribution(&state, &m).expect("dimensions match");
            s.distribution_sum = s.distribution_sum.max((p.iter().sum::<f64>() - 1.0).abs());
            s.most_negative = s.most_negative.min(p.iter().copied().fold(0.0, f64::min));
        }
    }
    s
}

fn split_additivity<R: Rng + ?Sized>(rng: &mut R, m: &OperatorValuedMeasure) -> f64 {
    let n = m.outcomes().len();
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|_| rng.random());
    let all: Vec<usize> = a.iter().chain(&b).copied().collect();
    max_abs_diff(&(m.of_set(&a) + m.of_set(&b)), &m.of_set(&all))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ProjectionStats {
    pub trace: f64,
    pub idempotence: f64,
    /// Diagonal in the measurement basis against the projective distribution.
    pub diagonal: f64,
}

pub fn projection_stats<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProjectionStats {
    let mut s = ProjectionStats::default();
    for _ in 0..n {
        let d = rng.random_range(2..6);
        let rho = State::Density(random_density(rng, d));
        let basis = random_basis(rng, d);
        let once = von_neumann_update(&rho, &basis).expect("complete basis");
        let twice = von_neumann_update(&State::Density(once.clone()), &basis).expect("complete basis");
        s.trace = s.trace.max((once.matrix().trace().re - 1.0).abs());
        s.idempotence = s.idempotence.max(max_abs_diff(once.matrix(), twice.matrix()));
        let proj = OperatorValuedMeasure::projective(&basis).expect("complete basis");
        let p = outcome_distribution(&rho, &proj).expect("dimensions match");
        let q = basis.matrix();
        let in_basis = q.adjoint() * once.matrix() * &q;
        for j in 0..d {
            s.diagonal = s.diagonal.max((in_basis[(j, j)].re - p[j]).abs());
        }
    }
    s
}

/// `v†Tv` against `Σ λ_j |v†v_j|²`.
pub fn spectral_expectation_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let d = rng.random_range(1..6);
            let t = HermitianOperator::new(random_hermitian(rng, d)).expect("hermitian");
            let v = random_unit_vector(rng, d);
            let (vals, vecs) = t.eigen();
            let spectral: f64 = vals
                .iter()
                .enumerate()
                .map(|(j, l)| l * vecs.column(j).dotc(&v).norm_sqr())
                .sum();
            (expectation(&v, &t).expect("unit") - spectral).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitarizeStats {
    pub unitarity: f64,
    pub all_complete: bool,
}

/// `unitarize(expectation_operator)` over random complete models.
pub fn unitarize_stats<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnitarizeStats {
    let mut s = UnitarizeStats {
        unitarity: 0.0,
        all_complete: true,
    };
    for _ in 0..n {
        let k = rng.random_range(2..7);
        let (model, stat) = random_complete_model(rng, k);
        s.all_complete &= is_complete(&model, &stat).unwrap_or(false);
        let a = expectation_operator(&model, &stat).expect("total statistic");
        match unitarize(&a) {
            Ok(u) => {
                s.unitarity = s
                    .unitarity
                    .max(unitarity_residual(&statsym_core::linalg::to_complex(&u)))
            }
            Err(_) => s.unitarity = f64::INFINITY,
        }
    }
    s
}

/// Whether every random incomplete model is rejected with the declared error.
pub fn incomplete_models_rejected<R: Rng + ?Sized>(rng: &mut R, n: usize) -> bool {
    (0..n).all(|_| {
        let k = rng.random_range(2..7);
        let (model, stat) = random_incomplete_model(rng, k);
        let a = expectation_operator(&model, &stat).expect("total statistic");
        !is_complete(&model, &stat).unwrap_or(true) && unitarize(&a) == Err(Error::IncompleteStatistic)
    })
}

/// Block dimensions of the regular representation, sorted.
pub fn regular_block_dims<R: Rng + ?Sized>(action: &GroupAction, rng: &mut R) -> (Vec<usize>, f64) {
    let rep = regular_representation(action, &invariant_measure(action)).expect("uniform measure");
    let blocks = decompose_irreducible(&rep, rng);
    let worst = blocks.iter().map(|b| invariance_residual(&rep, b)).fold(0.0, f64::max);
    (blocks.iter().map(|b| b.len()).collect(), worst)
}

/// Homomorphism and unitarity residuals of a representation.
pub fn representation_residual(rep: &Representation) -> f64 {
    let (c, u) = rep.residuals();
    c.max(u)
}

/// Whether the corrupted table of S₃ is caught as non-associative.
pub fn corrupted_table_detected() -> bool {
    let (g, _) = generate_group(&[vec![1, 2, 0], vec![0, 2, 1]]).expect("S3");
    let mut table = g.cayley_rows();
    table[1].swap(1, 2);
    check_group_table(&table)
        .iter()
        .any(|v| matches!(v, AxiomViolation::NotAssociative(..)))
        && FiniteGroup::from_cayley(table).is_err()
}

/// Maximal permissible subgroups for random labellings, against pairwise
/// brute force and every subgroup under which the labelling is permissible.
pub fn permissibility_mismatches<R: Rng + ?Sized>(action: &GroupAction, rng: &mut R, n: usize) -> usize {
    let g = action.group();
    let size = action.space_size();
    let subgroups: Vec<Subgroup> = {
        let mut v: Vec<Subgroup> = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| Subgroup::generated_by(g, &[x, y]))
            .collect();
        v.sort_by(|a, b| a.elements().cmp(b.elements()));
        v.dedup();
        v
    };
    let mut bad = 0;
    for _ in 0..n {
        let k = rng.random_range(1..=size.min(4));
        let labels: Vec<String> = (0..size).map(|_| format!("v{}", rng.random_range(0..k))).collect();
        let lambda = ParameterFunction::from_labels(&labels).expect("nonempty");
        let max = maximal_permissible_subgroup(&lambda, action).expect("sizes match");
        if max.elements() != brute_force_maximal(&lambda, action).as_slice() {
            bad += 1;
        }
        for s in &subgroups {
            let ok = is_permissible(&lambda, action, s).expect("sizes match");
            let inside = s.elements().iter().all(|&e| max.contains(e));
            if ok != inside {
                bad += 1;
            }
        }
    }
    bad
}

/// Elements `g` with `λ(x) = λ(y) ⇒ λ(x·g) = λ(y·g)`, by checking all pairs.
pub fn brute_force_maximal(lambda: &ParameterFunction, action: &GroupAction) -> Vec<usize> {
    let n = action.space_size();
    action
        .group()
        .elements()
        .filter(|&g| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    lambda.at(x) != lambda.at(y) || lambda.at(action.apply(x, g)) == lambda.at(action.apply(y, g))
                })
            })
        })
        .collect()
}
