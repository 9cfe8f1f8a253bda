use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use statsym_core::group::{
    check_group_table, invariant_measure, is_permissible, is_transitive, maximal_permissible_subgroup, orbits,
    FiniteGroup, GroupAction, ParameterFunction, Subgroup,
};
use statsym_core::hilbert::{indicator_basis, invariant_subspace_va, regular_representation};
use statsym_core::linalg::hermitian_eigen;
use statsym_core::qubit::{
    complement_effect, effect_from_test, generalized_probability, test_from_effect, BlochVector, Effect,
    CLOSED_FORM_TOL, NUMERIC_TOL,
};
use statsym_core::statmodel::{
    expectation_operator, is_complete, sufficiency_report, unitarize, Statistic, StatisticalModel,
};
use statsym_core::{linalg::to_complex, Error};

use crate::report::{CheckKind, ScenarioReport};
use crate::suite::{brute_force_maximal, regular_block_dims, representation_residual};
use crate::CliError;

/// A finite group by its Cayley table, optionally acting on a parameter
/// space (`action[g][x] = x·g`) with a labelling of that space.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub cayley: Vec<Vec<usize>>,
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

/// Every section is optional; each present section contributes its checks.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioInput {
    #[serde(default)]
    pub group: Option<GroupDoc>,
    #[serde(default)]
    pub model: Option<StatisticalModel>,
    /// Statistic as one label per outcome; defaults to the identity.
    #[serde(default)]
    pub statistic: Option<Vec<String>>,
    #[serde(default)]
    pub effects: Vec<Effect>,
    /// Pure state against which effects are evaluated.
    #[serde(default)]
    pub state: Option<BlochVector>,
}

pub fn run_scenario_file(path: &Path, seed: u64) -> Result<ScenarioReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let input: ScenarioInput = serde_json::from_str(&text)?;
    run_scenario(&input, seed)
}

pub fn run_scenario(input: &ScenarioInput, seed: u64) -> Result<ScenarioReport, CliError> {
    let mut r = ScenarioReport::new("scenario", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(g) = &input.group {
        group_section(&mut r, g, &mut rng)?;
    }
    if let Some(model) = &input.model {
        model_section(&mut r, model, input.statistic.as_deref())?;
    }
    for (i, e) in input.effects.iter().enumerate() {
        effect_section(&mut r, i, e, input.state.as_ref());
    }
    Ok(r)
}

fn group_section(r: &mut ScenarioReport, doc: &GroupDoc, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let violations: Vec<String> = check_group_table(&doc.cayley).iter().map(ToString::to_string).collect();
    if !r.exact(
        "group table satisfies the group axioms",
        CheckKind::Identity,
        Vec::<String>::new(),
        &violations,
    ) {
        return Ok(());
    }
    let group = FiniteGroup::from_cayley(doc.cayley.clone())?;
    let action = match &doc.action {
        None => GroupAction::right_regular(&group),
        Some(table) => {
            let n = table.first().map_or(0, Vec::len);
            match GroupAction::new(group.clone(), n, table.clone()) {
                Ok(a) => a,
                Err(e) => {
                    r.exact(
                        "action is compatible with the group",
                        CheckKind::Identity,
                        "ok",
                        e.to_string(),
                    );
                    return Ok(());
                }
            }
        }
    };
    r.note("group_order", group.order());
    r.note("orbits", orbits(&action));
    r.note("transitive", is_transitive(&action));
    let nu = invariant_measure(&action);
    r.exact(
        "uniform measure is invariant",
        CheckKind::Identity,
        true,
        nu.is_invariant(&action),
    );
    let rep = regular_representation(&action, &nu)?;
    r.residual(
        "regular representation is a unitary anti-homomorphism",
        CheckKind::Identity,
        representation_residual(&rep),
        1e-12,
    );
    let (dims, worst) = regular_block_dims(&action, rng);
    r.note("irreducible_block_dims", dims);
    r.residual("irreducible blocks are invariant", CheckKind::Identity, worst, 1e-8);

    let Some(labels) = &doc.labels else { return Ok(()) };
    let lambda = ParameterFunction::from_labels(labels)?;
    let max = maximal_permissible_subgroup(&lambda, &action)?;
    r.note("maximal_permissible_subgroup", max.elements());
    r.note(
        "permissible_under_group",
        is_permissible(&lambda, &action, &Subgroup::full(&group))?,
    );
    r.exact(
        "maximal permissible subgroup agrees with brute force",
        CheckKind::Oracle,
        brute_force_maximal(&lambda, &action),
        max.elements(),
    );
    let va = invariant_subspace_va(&lambda, &nu)?;
    r.note("function_space_dim", va.len());
    match indicator_basis(&lambda, &nu) {
        Ok(ind) => {
            let span = va.span_residual(&ind).max(ind.span_residual(&va));
            r.residual(
                "indicator basis spans the function space",
                CheckKind::Identity,
                span,
                1e-10,
            );
        }
        Err(e) => r.note("indicator_basis", e.to_string()),
    }
    Ok(())
}

fn model_section(r: &mut ScenarioReport, model: &StatisticalModel, labels: Option<&[String]>) -> Result<(), CliError> {
    let stat = labels.map_or_else(|| Statistic::identity(model.outcomes().len()), Statistic::from_labels);
    let report = sufficiency_report(model, &stat)?;
    r.note("sufficiency", &report);
    let complete = is_complete(model, &stat)?;
    r.note("complete", complete);
    let a = expectation_operator(model, &stat)?;
    match unitarize(&a) {
        Ok(u) => {
            let res = statsym_core::linalg::unitarity_residual(&to_complex(&u));
            let res = if u.is_square() {
                res
            } else {
                statsym_core::linalg::isometry_residual(&to_complex(&u))
            };
            r.residual(
                "unitary factor of the expectation operator",
                CheckKind::Identity,
                res,
                1e-10,
            );
        }
        Err(e) => {
            r.exact(
                "incomplete statistic has no unitary factor",
                CheckKind::Identity,
                false,
                complete,
            );
            r.note("unitarize", e.to_string());
            debug_assert_eq!(e, Error::IncompleteStatistic);
        }
    }
    Ok(())
}

fn effect_section(r: &mut ScenarioReport, i: usize, e: &Effect, state: Option<&BlochVector>) {
    r.note(&format!("effect_{i}"), e);
    let (vals, _) = hermitian_eigen(&e.matrix());
    let (lo, hi) = e.eigenvalues();
    let res = (vals[0] - lo).abs().max((vals[1] - hi).abs());
    r.residual(
        &format!("effect {i}: eigenvalues are (r +- c)/2"),
        CheckKind::Oracle,
        res,
        NUMERIC_TOL,
    );
    if e.c() > CLOSED_FORM_TOL {
        let spec = test_from_effect(e).expect("informative");
        r.note(
            &format!("effect_{i}_test"),
            serde_json::json!({
                "alpha": spec.alpha(), "beta": spec.beta(), "b": spec.b(), "outcome": spec.outcome(),
            }),
        );
        let back = effect_from_test(&spec);
        let res = (back.r() - e.r()).abs().max((back.cu() - e.cu()).norm());
        r.residual(
            &format!("effect {i}: recovered test reproduces the effect"),
            CheckKind::Identity,
            res,
            CLOSED_FORM_TOL,
        );
    }
    if let Some(a) = state {
        let pi = generalized_probability(a, e);
        r.note(&format!("effect_{i}_pi"), pi);
        let rho = statsym_core::qubit::pure_state(*a, statsym_core::qubit::Outcome::Plus).matrix();
        r.close(
            &format!("effect {i}: pi equals tr(rho E)"),
            CheckKind::Identity,
            (rho * e.matrix()).trace().re,
            pi,
            CLOSED_FORM_TOL,
        );
        let total = pi + generalized_probability(a, &complement_effect(e));
        r.close(
            &format!("effect {i}: pi(E) + pi(I - E) = 1"),
            CheckKind::Identity,
            1.0,
            total,
            CLOSED_FORM_TOL,
        );
    }
}
