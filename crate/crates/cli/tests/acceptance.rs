//! Acceptance criteria, one function each. Runs without the libtest harness
//! so every verdict line is printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statsym_core::group::{
    induced_parameter_action, invariant_measure, is_permissible, maximal_permissible_subgroup, s3_triangle, Subgroup,
};
use statsym_core::hilbert::{
    eigen_transport_check, indicator_basis, invariant_subspace_va, multiplication_operator, regular_representation,
};
use statsym_core::linalg::{max_abs_diff, to_complex, unitarity_residual};
use statsym_core::measurement::{outcome_distribution, povm_from_model, von_neumann_update, State};
use statsym_core::qubit::{born_amplitude, born_pure, born_trace, effect_from_test, test_from_effect, BlochVector};
use statsym_core::statmodel::{expectation_operator, unitarize, StatisticalModel};
use statsym_core::Error;
use statsym_runner::fixtures::{
    random_basis, random_complete_model, random_density, random_incomplete_model, random_spec, random_stochastic,
};
use statsym_runner::suite::{
    additivity_residual, coin_mixture_residual, effect_eigen_residual, regular_block_dims, round_trip_residual,
};
use statsym_runner::{run_tetrahedron, run_triangle, TetrahedronConfig};

struct Verdict {
    title: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(title: &'static str, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        title,
        pass,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1_triangle_permissibility() -> Verdict {
    let (report, elapsed) = timed(run_triangle);
    let t = s3_triangle();
    let full = Subgroup::full(t.group());
    let cyclic = t.cyclic_subgroup();

    // Pairwise oracle for permissibility, independent of the library search.
    let permissible = |labels: &[usize], sub: &Subgroup| {
        sub.elements().iter().all(|&g| {
            (0..6).all(|x| {
                (0..6).all(|y| labels[x] != labels[y] || labels[t.action.apply(x, g)] == labels[t.action.apply(y, g)])
            })
        })
    };
    let colour_ok = permissible(t.colour.labels(), &full) && is_permissible(&t.colour, &t.action, &full).unwrap();
    let windows_not = t
        .windows
        .iter()
        .all(|w| !permissible(w.labels(), &full) && !is_permissible(w, &t.action, &full).unwrap());
    let maximal: Vec<Vec<usize>> = t
        .windows
        .iter()
        .map(|w| maximal_permissible_subgroup(w, &t.action).unwrap().elements().to_vec())
        .collect();
    let maximal_cyclic = maximal.iter().all(|m| m == cyclic.elements());
    let report_agrees = (0..3).all(|i| {
        let w = ["a", "b", "c"][i];
        report
            .find(&format!("maximal subgroup for window {w} is the cyclic subgroup"))
            .is_some_and(|c| c.pass)
            == maximal_cyclic
    });

    let pass = colour_ok && windows_not && maximal_cyclic && report_agrees && elapsed < Duration::from_secs(1);
    let detail = format!(
        "colour permissible {colour_ok}, windows non-permissible {windows_not}, \
         window maximal subgroups {maximal:?} vs cyclic {:?}, {elapsed:.2?}",
        cyclic.elements()
    );
    verdict("triangle permissibility and maximal subgroups", pass, detail)
}

fn criterion_2_born_closed_form() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ((worst, self_exact, antipode_exact), elapsed) = timed(|| {
        let mut worst = 0.0f64;
        let (mut self_exact, mut antipode_exact) = (true, true);
        for _ in 0..1000 {
            let (a, b) = (BlochVector::random(&mut rng), BlochVector::random(&mut rng));
            let closed = 0.5 * (1.0 + a.dot(&b));
            for p in [born_pure(&a, &b), born_trace(&a, &b), born_amplitude(&a, &b)] {
                worst = worst.max((p - closed).abs());
            }
            self_exact &= born_pure(&a, &a) == 1.0;
            antipode_exact &= born_pure(&a, &-a) == 0.0;
        }
        (worst, self_exact, antipode_exact)
    });
    let pass = worst < 1e-12 && self_exact && antipode_exact && elapsed < Duration::from_secs(1);
    let detail = format!("max deviation {worst:.2e}, P(a,a)=1 {self_exact}, P(a,-a)=0 {antipode_exact}, {elapsed:.2?}");
    verdict("Born probability three ways", pass, detail)
}

fn criterion_3_tetrahedron() -> Verdict {
    let p = |alpha, beta| {
        let r = run_tetrahedron(&TetrahedronConfig {
            alpha,
            beta,
            ..Default::default()
        })
        .unwrap();
        (r.findings["probability"].as_f64().unwrap(), r.all_passed())
    };
    let (ideal, ideal_ok) = p(0.0, 1.0);
    let (noisy, noisy_ok) = p(0.05, 0.8);
    let expected = 1.0 - 0.05 / 3.0 - 2.0 * 0.8 / 3.0;
    let pass = (ideal - 1.0 / 3.0).abs() < 1e-12 && (noisy - expected).abs() < 1e-12 && ideal_ok && noisy_ok;
    verdict(
        "tetrahedron decision probability",
        pass,
        format!("ideal {ideal}, noisy {noisy} vs {expected}"),
    )
}

fn criterion_4_effect_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let trip = round_trip_residual(&mut rng, 1000);
    let eig = effect_eigen_residual(&mut rng, 1000);
    // Every sampled spec must also be invertible.
    let recoverable = (0..1000).all(|_| test_from_effect(&effect_from_test(&random_spec(&mut rng))).is_ok());
    let pass = trip < 1e-12 && eig < 1e-10 && recoverable;
    verdict(
        "test/effect round trip and eigenvalues",
        pass,
        format!("round trip {trip:.2e}, eigenvalues {eig:.2e}"),
    )
}

fn criterion_5_additivity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let add = additivity_residual(&mut rng, 1000);
    let mix = coin_mixture_residual(&mut rng, 1000);
    let pass = add < 1e-12 && mix < 1e-12;
    verdict(
        "additivity and coin mixture",
        pass,
        format!("additivity {add:.2e}, coin mixture {mix:.2e}"),
    )
}

fn criterion_6_regular_decomposition() -> Verdict {
    let t = s3_triangle();
    let (runs, elapsed) = timed(|| {
        (0..5u64)
            .map(|seed| {
                let mut dims_and_res = regular_block_dims(&t.action, &mut ChaCha8Rng::seed_from_u64(seed));
                dims_and_res.0.sort_unstable();
                dims_and_res
            })
            .collect::<Vec<_>>()
    });
    let pass = runs.iter().all(|(d, res)| d == &[1, 1, 2, 2] && *res < 1e-8) && elapsed < Duration::from_secs(5);
    let detail = format!("{:?}, {elapsed:.2?}", runs);
    verdict("S3 regular representation blocks", pass, detail)
}

fn criterion_7_function_spaces_and_transport() -> Verdict {
    let t = s3_triangle();
    let nu = invariant_measure(&t.action);
    let mut span = 0.0f64;
    for lambda in std::iter::once(&t.colour).chain(&t.windows) {
        let va = invariant_subspace_va(lambda, &nu).unwrap();
        let ind = indicator_basis(lambda, &nu).unwrap();
        span = span.max(va.span_residual(&ind)).max(ind.span_residual(&va));
    }
    let rep = regular_representation(&t.action, &nu).unwrap();
    let s = multiplication_operator(&t.windows[0], &[1.0, 2.0, 3.0], &nu).unwrap();
    let transport = induced_parameter_action(&t.windows[0], &t.action, &t.cyclic_subgroup())
        .and_then(|values| eigen_transport_check(&rep.restrict(&t.cyclic_subgroup()), &s, &values));
    let pass = span < 1e-10 && transport == Ok(true);
    let detail = format!("span residual {span:.2e}, window a transport under cyclic subgroup {transport:?}");
    verdict("indicator spans and eigenvector transport", pass, detail)
}

fn criterion_8_measurement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut complete, mut total, mut trace, mut idem) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let d = rand::Rng::random_range(&mut rng, 2..6);
        let k = rand::Rng::random_range(&mut rng, 2..6);
        let model = StatisticalModel::from_rows(random_stochastic(&mut rng, d, k)).unwrap();
        let basis = random_basis(&mut rng, d);
        let m = povm_from_model(&model, &basis).unwrap();
        complete = complete.max(m.completeness_residual());
        let rho = State::Density(random_density(&mut rng, d));
        let p = outcome_distribution(&rho, &m).unwrap();
        total = total.max((p.iter().sum::<f64>() - 1.0).abs());
        let once = von_neumann_update(&rho, &basis).unwrap();
        let twice = von_neumann_update(&State::Density(once.clone()), &basis).unwrap();
        trace = trace.max((once.matrix().trace().re - 1.0).abs());
        idem = idem.max(max_abs_diff(once.matrix(), twice.matrix()));
    }
    let pass = complete < 1e-10 && total < 1e-10 && trace < 1e-12 && idem < 1e-12;
    let detail =
        format!("completeness {complete:.2e}, distribution sum {total:.2e}, trace {trace:.2e}, idempotence {idem:.2e}");
    verdict("operator-valued measures and projection update", pass, detail)
}

fn criterion_9_unitary_factor() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let k = rand::Rng::random_range(&mut rng, 2..7);
        let (model, stat) = random_complete_model(&mut rng, k);
        let u = unitarize(&expectation_operator(&model, &stat).unwrap()).unwrap();
        worst = worst.max(unitarity_residual(&to_complex(&u)));
    }
    let rejected = (0..100).all(|_| {
        let k = rand::Rng::random_range(&mut rng, 2..7);
        let (model, stat) = random_incomplete_model(&mut rng, k);
        unitarize(&expectation_operator(&model, &stat).unwrap()) == Err(Error::IncompleteStatistic)
    });
    let pass = worst < 1e-10 && rejected;
    verdict(
        "unitary factor of complete models",
        pass,
        format!("unitarity {worst:.2e}, incomplete rejected {rejected}"),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 9] = [
        criterion_1_triangle_permissibility,
        criterion_2_born_closed_form,
        criterion_3_tetrahedron,
        criterion_4_effect_round_trip,
        criterion_5_additivity,
        criterion_6_regular_decomposition,
        criterion_7_function_spaces_and_transport,
        criterion_8_measurement,
        criterion_9_unitary_factor,
    ];
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let v = std::panic::catch_unwind(criterion).unwrap_or_else(|_| verdict("panicked", false, "see stderr"));
        println!(
            "{} criterion {}: {} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.title,
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
