use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statsym_core::group::{
    generate_group, induced_parameter_action, invariant_measure, is_transitive, maximal_permissible_subgroup, orbits,
    s3_triangle, GroupAction,
};
use statsym_core::hilbert::{
    conjugated_operator, eigen_transport_check, indicator_basis, invariance_residual, invariant_subspace_va,
    multiplication_operator, regular_representation,
};
use statsym_core::linalg::random_unitary;
use statsym_core::measurement::{outcome_distribution, povm_from_model, State};
use statsym_core::qubit::{born_pure, BlochVector, CLOSED_FORM_TOL, NUMERIC_TOL};
use statsym_core::statmodel::{is_sufficient, Statistic, StatisticalModel};

use super::spin::basis_along;
use crate::fixtures::random_stochastic;
use crate::report::{CheckKind, ScenarioReport};
use crate::suite::*;

const SAMPLES: usize = 1000;
const MODELS: usize = 100;

/// Every cross-module invariant, each evaluated on fixed-seed random inputs.
pub fn run_check(seed: u64) -> ScenarioReport {
    let mut r = ScenarioReport::new("check", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    group_checks(&mut r, &mut rng);
    statmodel_checks(&mut r, &mut rng);
    hilbert_checks(&mut r, &mut rng);
    qubit_checks(&mut r, &mut rng);
    measurement_checks(&mut r, &mut rng);
    r
}

fn group_checks(r: &mut ScenarioReport, rng: &mut ChaCha8Rng) {
    use CheckKind::*;
    let t = s3_triangle();
    r.exact(
        "S3 table satisfies the group axioms",
        Identity,
        0,
        t.group().axiom_violations().len(),
    );
    r.exact(
        "corrupted S3 table is caught as non-associative",
        Identity,
        true,
        corrupted_table_detected(),
    );
    let (s4, s4_action) = generate_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).expect("S4");
    r.exact(
        "S4 generated from a 4-cycle and a transposition",
        Oracle,
        24,
        s4.order(),
    );
    r.exact(
        "S4 acts transitively on 4 points",
        Identity,
        true,
        is_transitive(&s4_action),
    );
    let (_, c3) = generate_group(&[vec![1, 2, 0, 4, 5, 3]]).expect("C3");
    r.exact(
        "C3 on two triangles has two orbits",
        Oracle,
        vec![vec![0, 1, 2], vec![3, 4, 5]],
        orbits(&c3),
    );
    r.exact(
        "uniform measure is invariant for C3 on two triangles",
        Identity,
        true,
        invariant_measure(&c3).is_invariant(&c3),
    );
    r.exact(
        "maximal permissible subgroups agree with brute force on S3",
        Oracle,
        0,
        permissibility_mismatches(&t.action, rng, 200),
    );
}

fn statmodel_checks(r: &mut ScenarioReport, rng: &mut ChaCha8Rng) {
    use CheckKind::*;
    let mut id_ok = true;
    let mut const_ok = true;
    for _ in 0..MODELS {
        let model = StatisticalModel::from_rows(random_stochastic(rng, 3, 4)).expect("stochastic");
        id_ok &= is_sufficient(&model, &Statistic::identity(4)).unwrap_or(false);
        const_ok &= !is_sufficient(&model, &Statistic::constant(4)).unwrap_or(true);
    }
    r.exact("identity statistic is sufficient", Identity, true, id_ok);
    r.exact(
        "constant statistic is not sufficient for distinct rows",
        Identity,
        true,
        const_ok,
    );
    // P(y|λ) = P(t|λ)·h(y|t) with h independent of λ
    let factored = StatisticalModel::from_rows(vec![
        vec![0.2 * 0.25, 0.2 * 0.75, 0.8 * 0.5, 0.8 * 0.5],
        vec![0.6 * 0.25, 0.6 * 0.75, 0.4 * 0.5, 0.4 * 0.5],
    ])
    .expect("stochastic");
    let coarse = Statistic::from_labels(&["s", "s", "t", "t"]);
    r.exact(
        "factorized model: coarse statistic is sufficient",
        Oracle,
        true,
        is_sufficient(&factored, &coarse).unwrap_or(false),
    );

    let u = unitarize_stats(rng, MODELS);
    r.exact(
        "random diagonally dominant models are complete",
        Identity,
        true,
        u.all_complete,
    );
    r.residual(
        "unitary factor of the expectation operator",
        Identity,
        u.unitarity,
        1e-10,
    );
    r.exact(
        "incomplete models rejected",
        Identity,
        true,
        incomplete_models_rejected(rng, MODELS),
    );
}

fn hilbert_checks(r: &mut ScenarioReport, rng: &mut ChaCha8Rng) {
    use CheckKind::*;
    let t = s3_triangle();
    let nu = invariant_measure(&t.action);
    let rep = regular_representation(&t.action, &nu).expect("uniform");
    r.residual(
        "regular representation of S3 is a unitary anti-homomorphism",
        Identity,
        representation_residual(&rep),
        1e-12,
    );

    let (dims, worst) = regular_block_dims(&t.action, rng);
    r.exact(
        "S3 regular representation block dimensions",
        Oracle,
        vec![1, 1, 2, 2],
        dims,
    );
    r.residual("S3 blocks are invariant", Identity, worst, 1e-8);
    let (s4, _) = generate_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).expect("S4");
    let s4_regular = GroupAction::right_regular(&s4);
    let (dims, worst) = regular_block_dims(&s4_regular, rng);
    r.exact(
        "S4 regular representation block dimensions",
        Oracle,
        vec![1, 1, 2, 2, 3, 3, 3, 3, 3, 3],
        dims,
    );
    r.residual("S4 blocks are invariant", Identity, worst, 1e-8);

    let mut span = 0.0f64;
    let mut invariance = 0.0f64;
    let mut transport = true;
    for (lambda, coding) in t
        .windows
        .iter()
        .map(|w| (w, vec![0.0, 1.0, 2.0]))
        .chain([(&t.colour, vec![-1.0, 1.0])])
    {
        let va = invariant_subspace_va(lambda, &nu).expect("uniform");
        let ind = indicator_basis(lambda, &nu).expect("equal level sets");
        span = span.max(va.span_residual(&ind)).max(ind.span_residual(&va));
        let max = maximal_permissible_subgroup(lambda, &t.action).expect("sizes match");
        let sub = rep.restrict(&max);
        invariance = invariance.max(invariance_residual(&sub, &va));
        let s = multiplication_operator(lambda, &coding, &nu).expect("distinct coding");
        let values = induced_parameter_action(lambda, &t.action, &max).expect("permissible");
        transport &= eigen_transport_check(&sub, &s, &values).unwrap_or(false);
    }
    r.residual(
        "indicator bases span the parameter function spaces",
        Identity,
        span,
        1e-10,
    );
    r.residual(
        "function spaces invariant under maximal subgroups",
        Identity,
        invariance,
        1e-10,
    );
    r.exact(
        "eigenvectors transported under maximal subgroups",
        Identity,
        true,
        transport,
    );

    let s = multiplication_operator(&t.windows[0], &[0.0, 1.0, 2.0], &nu).expect("distinct coding");
    let mut spectrum = 0.0f64;
    for _ in 0..20 {
        let w = random_unitary(rng, 6);
        let moved = conjugated_operator(s.operator(), &w).expect("unitary");
        for (x, y) in moved.spectrum().iter().zip(s.operator().spectrum()) {
            spectrum = spectrum.max((x - y).abs());
        }
    }
    r.residual("unitary conjugation preserves spectra", Identity, spectrum, 1e-10);
}

fn qubit_checks(r: &mut ScenarioReport, rng: &mut ChaCha8Rng) {
    use CheckKind::*;
    let born = born_agreement(rng, SAMPLES);
    r.residual(
        "Born probability: trace form agrees with closed form",
        Identity,
        born.trace_residual,
        CLOSED_FORM_TOL,
    );
    r.residual(
        "Born probability: amplitude form agrees with closed form",
        Identity,
        born.amplitude_residual,
        CLOSED_FORM_TOL,
    );
    r.exact(
        "P(a|a) = 1 and P(-a|a) = 0 exactly",
        Identity,
        true,
        born.self_exact && born.antipode_exact,
    );
    r.residual(
        "effect eigenvalues are (r +- c)/2",
        Oracle,
        effect_eigen_residual(rng, SAMPLES),
        NUMERIC_TOL,
    );
    r.residual(
        "test parameters recovered from effects",
        Identity,
        round_trip_residual(rng, SAMPLES),
        CLOSED_FORM_TOL,
    );
    r.residual(
        "pi is additive on summable effects",
        Identity,
        additivity_residual(rng, SAMPLES),
        CLOSED_FORM_TOL,
    );
    r.residual(
        "coin mixture has the mean pi",
        Identity,
        coin_mixture_residual(rng, SAMPLES),
        CLOSED_FORM_TOL,
    );
    r.residual(
        "pi(E) + pi(I - E) = 1",
        Identity,
        complement_residual(rng, SAMPLES),
        CLOSED_FORM_TOL,
    );
    r.residual(
        "probabilities invariant under rotations",
        Identity,
        rotation_residual(rng, SAMPLES),
        CLOSED_FORM_TOL,
    );
}

fn measurement_checks(r: &mut ScenarioReport, rng: &mut ChaCha8Rng) {
    use CheckKind::*;
    let m = measure_stats(rng, MODELS);
    r.residual(
        "operator-valued measures sum to the identity",
        Identity,
        m.completeness,
        1e-10,
    );
    r.residual(
        "operator-valued measures are additive on disjoint sets",
        Identity,
        m.additivity,
        1e-10,
    );
    r.residual("outcome distributions sum to 1", Identity, m.distribution_sum, 1e-10);
    r.residual(
        "outcome probabilities are nonnegative",
        Identity,
        -m.most_negative,
        1e-12,
    );
    let p = projection_stats(rng, MODELS);
    r.residual("projection update preserves trace", Identity, p.trace, 1e-12);
    r.residual("projection update is idempotent", Identity, p.idempotence, 1e-12);
    r.residual(
        "projection update diagonal equals projective distribution",
        Identity,
        p.diagonal,
        1e-12,
    );
    r.residual(
        "expectation equals spectral average",
        Identity,
        spectral_expectation_residual(rng, MODELS),
        1e-12,
    );

    let perfect = StatisticalModel::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).expect("identity");
    let mut worst = 0.0f64;
    for _ in 0..MODELS {
        let (a, b) = (BlochVector::random(rng), BlochVector::random(rng));
        let povm = povm_from_model(&perfect, &basis_along(&b).expect("orthonormal")).expect("complete");
        let p = outcome_distribution(&State::Vector(a.state_vector()), &povm).expect("qubit");
        worst = worst.max((p[0] - born_pure(&a, &b)).abs());
    }
    r.residual(
        "perfect-model measure reproduces the Born probability",
        Oracle,
        worst,
        1e-12,
    );
}
