use std::collections::BTreeMap;

use statsym_core::group::{
    find_intertwiner, induced_parameter_action, invariant_measure, is_permissible, is_transitive,
    maximal_permissible_subgroup, orbits, s3_triangle, Subgroup, Triangle,
};
use statsym_core::hilbert::{
    eigen_transport_check, invariant_subspace_va, multiplication_operator, regular_representation,
};

use crate::report::{CheckKind, ScenarioReport};

const WINDOWS: [&str; 3] = ["a", "b", "c"];

fn names(t: &Triangle, sub: &Subgroup) -> Vec<String> {
    sub.elements()
        .iter()
        .map(|&g| format!("g{}:{}", g + 1, t.reading(g)))
        .collect()
}

/// `P(λ_b = j | λ_a = i)` under the invariant measure, by counting.
fn window_transitions(t: &Triangle, a: usize, b: usize) -> Vec<Vec<f64>> {
    let nu = invariant_measure(&t.action);
    let (la, lb) = (&t.windows[a], &t.windows[b]);
    (0..la.value_count())
        .map(|i| {
            let given = la.level_set(i);
            let total = nu.mass(&given);
            (0..lb.value_count())
                .map(|j| {
                    let joint: Vec<usize> = given.iter().copied().filter(|&x| lb.at(x) == j).collect();
                    nu.mass(&joint) / total
                })
                .collect()
        })
        .collect()
}

/// Permissibility, maximal subgroups, measure, `V^λ` dimensions and the
/// window-to-window structure of the two-coloured triangle.
pub fn run_triangle() -> ScenarioReport {
    let t = s3_triangle();
    let g = t.group();
    let full = Subgroup::full(g);
    let cyclic = t.cyclic_subgroup();
    let mut r = ScenarioReport::new("triangle", None);

    r.exact(
        "group table satisfies the group axioms",
        CheckKind::Identity,
        0,
        g.axiom_violations().len(),
    );
    r.exact(
        "action is transitive",
        CheckKind::Reference,
        true,
        is_transitive(&t.action),
    );
    r.exact(
        "single orbit of size 6",
        CheckKind::Identity,
        vec![6],
        orbits(&t.action).iter().map(Vec::len).collect::<Vec<_>>(),
    );

    let colour_ok = is_permissible(&t.colour, &t.action, &full).unwrap_or(false);
    r.exact(
        "colour parameter permissible under all of S3",
        CheckKind::Reference,
        true,
        colour_ok,
    );
    for (w, lambda) in WINDOWS.iter().zip(&t.windows) {
        let ok = is_permissible(lambda, &t.action, &full).unwrap_or(true);
        r.exact(
            &format!("window {w} parameter not permissible under S3"),
            CheckKind::Reference,
            false,
            ok,
        );
    }

    let colour_max = maximal_permissible_subgroup(&t.colour, &t.action).expect("sizes match");
    r.exact(
        "maximal subgroup for colour is S3",
        CheckKind::Reference,
        names(&t, &full),
        names(&t, &colour_max),
    );
    let mut maximal = BTreeMap::new();
    for (w, lambda) in WINDOWS.iter().zip(&t.windows) {
        let m = maximal_permissible_subgroup(lambda, &t.action).expect("sizes match");
        r.exact(
            &format!("maximal subgroup for window {w} is the cyclic subgroup"),
            CheckKind::Reference,
            names(&t, &cyclic),
            names(&t, &m),
        );
        maximal.insert(format!("window_{w}"), names(&t, &m));
    }
    r.note("maximal_subgroups", maximal);
    let cyclic_ok: Vec<bool> = t
        .windows
        .iter()
        .map(|l| is_permissible(l, &t.action, &cyclic).unwrap_or(false))
        .collect();
    r.note("windows_permissible_under_cyclic_subgroup", cyclic_ok);

    let nu = invariant_measure(&t.action);
    r.exact(
        "invariant measure is uniform",
        CheckKind::Identity,
        vec![1.0 / 6.0; 6],
        nu.weights(),
    );
    r.exact(
        "invariant measure is invariant",
        CheckKind::Identity,
        true,
        nu.is_invariant(&t.action),
    );

    let dims = |l| invariant_subspace_va(l, &nu).map(|v| v.len()).ok();
    r.exact(
        "dim of colour function space",
        CheckKind::Reference,
        Some(2),
        dims(&t.colour),
    );
    for (w, lambda) in WINDOWS.iter().zip(&t.windows) {
        r.exact(
            &format!("dim of window {w} function space"),
            CheckKind::Identity,
            Some(3),
            dims(lambda),
        );
    }

    // Each window is carried to the next by a rotation.
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let k = find_intertwiner(&t.windows[i], &t.windows[j], &t.action);
        r.exact(
            &format!(
                "window {} reading carried to window {} by a rotation",
                WINDOWS[i], WINDOWS[j]
            ),
            CheckKind::Reference,
            true,
            k.is_some_and(|k| cyclic.contains(k)),
        );
    }
    let expected = vec![vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]];
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        r.exact(
            &format!(
                "window {} given window {}: other two corners equally likely",
                WINDOWS[j], WINDOWS[i]
            ),
            CheckKind::Oracle,
            &expected,
            window_transitions(&t, i, j),
        );
    }

    let rep = regular_representation(&t.action, &nu).expect("uniform measure");
    let colour_s = multiplication_operator(&t.colour, &[-1.0, 1.0], &nu).expect("distinct coding");
    let colour_values = induced_parameter_action(&t.colour, &t.action, &full).expect("permissible");
    r.exact(
        "colour eigenvectors transported by S3",
        CheckKind::Identity,
        true,
        eigen_transport_check(&rep, &colour_s, &colour_values).unwrap_or(false),
    );
    r
}
