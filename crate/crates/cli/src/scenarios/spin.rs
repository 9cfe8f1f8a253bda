use nalgebra::Vector3;
use statsym_core::hilbert::SubspaceBasis;
use statsym_core::linalg::max_abs_diff;
use statsym_core::measurement::{
    density_from_mixture, outcome_distribution, povm_from_model, von_neumann_update, State,
};
use statsym_core::qubit::{
    born_amplitude, born_pure, born_trace, complement_effect, effect_from_test, expected_component,
    generalized_probability, mixed_from_posterior, pure_state, test_from_effect, test_probability, BlochVector,
    Outcome, TestSpec, CLOSED_FORM_TOL,
};
use statsym_core::statmodel::StatisticalModel;
use statsym_core::Result;

use crate::report::{CheckKind, ScenarioReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConfig {
    /// Prepared direction.
    pub a: BlochVector,
    /// Measured direction.
    pub b: BlochVector,
    pub alpha: f64,
    pub beta: f64,
    /// Posterior error after a reported `+1`, if given.
    pub p1: Option<f64>,
    pub tol: f64,
}

impl Default for SpinConfig {
    fn default() -> Self {
        Self {
            a: BlochVector::z_axis(),
            b: BlochVector::normalized(Vector3::new(1.0, 0.0, 1.0)).expect("nonzero"),
            alpha: 0.05,
            beta: 0.8,
            p1: None,
            tol: CLOSED_FORM_TOL,
        }
    }
}

/// Stern–Gerlach along `b` with level `α` and power `β`: rows are the true
/// spin `±1`, columns the reported `±1`.
pub fn noisy_model(alpha: f64, beta: f64) -> Result<StatisticalModel> {
    let pm = vec!["+1".to_string(), "-1".to_string()];
    StatisticalModel::new(pm.clone(), pm, vec![vec![1.0 - alpha, alpha], vec![1.0 - beta, beta]])
}

pub fn basis_along(b: &BlochVector) -> Result<SubspaceBasis> {
    SubspaceBasis::new(2, vec![b.state_vector(), (-*b).state_vector()])
}

/// Born probabilities, the test effect, generalized probabilities, the
/// noisy measurement as an operator-valued measure, and the projection update.
pub fn run_spin(cfg: &SpinConfig) -> Result<ScenarioReport> {
    let SpinConfig {
        a,
        b,
        alpha,
        beta,
        p1,
        tol,
    } = *cfg;
    let spec = TestSpec::new(b, alpha, beta, Outcome::Plus)?;
    let mut r = ScenarioReport::new("spin", None);

    let born = born_pure(&a, &b);
    r.note("born", born);
    r.close(
        "Born probability by trace of projectors",
        CheckKind::Identity,
        born,
        born_trace(&a, &b),
        tol,
    );
    r.close(
        "Born probability by amplitude of state vectors",
        CheckKind::Identity,
        born,
        born_amplitude(&a, &b),
        tol,
    );
    r.exact("P(a|a) = 1", CheckKind::Reference, 1.0, born_pure(&a, &a));
    r.exact("P(-a|a) = 0", CheckKind::Reference, 0.0, born_pure(&a, &-a));

    let e = effect_from_test(&spec);
    r.note("effect", e);
    r.close(
        "r = 2 - alpha - beta",
        CheckKind::Reference,
        2.0 - alpha - beta,
        e.r(),
        tol,
    );
    r.close("c = beta - alpha", CheckKind::Reference, beta - alpha, e.c(), tol);
    let pi = generalized_probability(&a, &e);
    r.note("pi", pi);
    let p2 = 1.0 - 0.5 * (alpha + beta) + 0.5 * (beta - alpha) * a.dot(&b);
    r.close(
        "pi(alpha, beta, b) = 1 - (alpha+beta)/2 + (beta-alpha) a.b/2",
        CheckKind::Reference,
        p2,
        pi,
        tol,
    );
    r.close(
        "pi from test parameters",
        CheckKind::Identity,
        test_probability(&a, &spec),
        pi,
        tol,
    );
    let rho_a = pure_state(a, Outcome::Plus).matrix();
    r.close(
        "pi equals tr(rho_a E)",
        CheckKind::Identity,
        (&rho_a * e.matrix()).trace().re,
        pi,
        tol,
    );
    r.close(
        "pi(E) + pi(I - E) = 1",
        CheckKind::Identity,
        1.0,
        pi + generalized_probability(&a, &complement_effect(&e)),
        tol,
    );
    let ideal = effect_from_test(&TestSpec::new(b, 0.0, 1.0, Outcome::Plus)?);
    r.close(
        "alpha = 0, beta = 1 gives the Born probability",
        CheckKind::Reference,
        born,
        generalized_probability(&a, &ideal),
        tol,
    );

    let sum = expected_component(&spec, Outcome::Plus) + expected_component(&spec, Outcome::Minus);
    r.residual(
        "expected components sum to 2cu",
        CheckKind::Reference,
        (sum - 2.0 * e.cu()).norm(),
        tol,
    );
    if e.c() > CLOSED_FORM_TOL {
        let back = test_from_effect(&e)?;
        let err = (back.alpha() - alpha).abs().max((back.beta() - beta).abs());
        r.residual(
            "alpha and beta recovered from the effect",
            CheckKind::Identity,
            err,
            tol,
        );
    } else {
        r.exact(
            "uninformative effect has no direction",
            CheckKind::Identity,
            true,
            test_from_effect(&e).is_err(),
        );
    }

    let model = noisy_model(alpha, beta)?;
    let basis = basis_along(&b)?;
    let povm = povm_from_model(&model, &basis)?;
    r.residual(
        "POVM element for +1 equals the test effect",
        CheckKind::Identity,
        max_abs_diff(&povm.operators()[0], &e.matrix()),
        tol,
    );
    let dist = outcome_distribution(&State::Vector(a.state_vector()), &povm)?;
    r.note("distribution", &dist);
    r.close(
        "P(t = +1) from the POVM equals pi",
        CheckKind::Identity,
        pi,
        dist[0],
        tol,
    );
    r.close(
        "outcome distribution sums to 1",
        CheckKind::Identity,
        1.0,
        dist.iter().sum(),
        1e-10,
    );

    let after = von_neumann_update(&State::Vector(a.state_vector()), &basis)?;
    let q = basis.matrix();
    let in_b = q.adjoint() * after.matrix() * &q;
    r.close(
        "projection update: weight on +b is the Born probability",
        CheckKind::Oracle,
        born,
        in_b[(0, 0)].re,
        tol,
    );
    r.close(
        "projection update: weight on -b is 1 - Born",
        CheckKind::Oracle,
        1.0 - born,
        in_b[(1, 1)].re,
        tol,
    );
    r.residual(
        "projection update is diagonal in the b basis",
        CheckKind::Identity,
        in_b[(0, 1)].norm(),
        tol,
    );
    r.close(
        "projection update preserves trace",
        CheckKind::Identity,
        1.0,
        after.matrix().trace().re,
        tol,
    );
    let twice = von_neumann_update(&State::Density(after.clone()), &basis)?;
    r.residual(
        "projection update is idempotent",
        CheckKind::Identity,
        max_abs_diff(twice.matrix(), after.matrix()),
        tol,
    );

    if let Some(p1) = p1 {
        let mixed = mixed_from_posterior(b, p1)?;
        r.note("posterior_effect", mixed);
        r.close(
            "posterior state has c = 1 - 2 p1",
            CheckKind::Reference,
            1.0 - 2.0 * p1,
            mixed.c(),
            tol,
        );
        let rho = density_from_mixture(&[1.0 - p1, p1], basis.vectors())?;
        r.residual(
            "posterior state equals the weighted mixture",
            CheckKind::Identity,
            max_abs_diff(rho.matrix(), &mixed.matrix()),
            tol,
        );
        r.close(
            "pi of the posterior state",
            CheckKind::Oracle,
            0.5 * (1.0 + (1.0 - 2.0 * p1) * a.dot(&b)),
            generalized_probability(&a, &mixed),
            tol,
        );
    }
    Ok(r)
}
