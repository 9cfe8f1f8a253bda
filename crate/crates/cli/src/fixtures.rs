//! Seeded random inputs shared by the invariant suite and the tests.

use nalgebra::{Rotation3, Unit, Vector3};
use rand::Rng;
use statsym_core::hilbert::SubspaceBasis;
use statsym_core::linalg::random_unitary;
use statsym_core::measurement::{density_from_mixture, DensityMatrix};
use statsym_core::qubit::{BlochVector, Effect, Outcome, TestSpec};
use statsym_core::statmodel::{Statistic, StatisticalModel};

/// Row-stochastic table with entries bounded away from zero.
pub fn random_stochastic<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let w: Vec<f64> = (0..cols).map(|_| rng.random::<f64>() + 1e-3).collect();
            let s: f64 = w.iter().sum();
            w.iter().map(|x| x / s).collect()
        })
        .collect()
}

/// Square model with a diagonally dominant table, hence complete for `t(y) = y`.
pub fn random_complete_model<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (StatisticalModel, Statistic) {
    let mut probs = random_stochastic(rng, n, n);
    for (i, row) in probs.iter_mut().enumerate() {
        row[i] += n as f64;
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|p| *p /= s);
    }
    (
        StatisticalModel::from_rows(probs).expect("stochastic"),
        Statistic::identity(n),
    )
}

/// Model whose rows are all equal, so no nonconstant statistic is complete.
pub fn random_incomplete_model<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (StatisticalModel, Statistic) {
    let row = random_stochastic(rng, 1, n).remove(0);
    (
        StatisticalModel::from_rows(vec![row; n]).expect("stochastic"),
        Statistic::identity(n),
    )
}

pub fn random_basis<R: Rng + ?Sized>(rng: &mut R, d: usize) -> SubspaceBasis {
    SubspaceBasis::from_matrix(&random_unitary(rng, d)).expect("unitary columns")
}

pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    let w: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
    let s: f64 = w.iter().sum();
    let w: Vec<f64> = w.iter().map(|x| x / s).collect();
    density_from_mixture(&w, random_basis(rng, d).vectors()).expect("convex weights")
}

pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation3<f64> {
    let axis = Unit::new_normalize(*BlochVector::random(rng).as_vector());
    Rotation3::from_axis_angle(&axis, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// Uniform over the valid `(r, c)` triangle, uniform direction.
pub fn random_effect<R: Rng + ?Sized>(rng: &mut R) -> Effect {
    let c: f64 = rng.random();
    let r = c + (2.0 - 2.0 * c) * rng.random::<f64>();
    Effect::new(r, c, Some(BlochVector::random(rng))).expect("inside triangle")
}

/// A pair with `E₁ + E₂ ≤ I`, by rejection.
pub fn random_summable_pair<R: Rng + ?Sized>(rng: &mut R) -> (Effect, Effect) {
    loop {
        let (e1, e2) = (random_effect(rng), random_effect(rng));
        if e1.checked_add(&e2).is_ok() {
            return (e1, e2);
        }
    }
}

/// Valid test with `β > α` strictly and a random reported outcome.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R) -> TestSpec {
    loop {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        let (alpha, beta) = if x < y { (x, y) } else { (y, x) };
        if beta - alpha < 1e-6 {
            continue;
        }
        let outcome = if rng.random() { Outcome::Plus } else { Outcome::Minus };
        return TestSpec::new(BlochVector::random(rng), alpha, beta, outcome).expect("ordered");
    }
}

pub fn vector3(v: &Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}
