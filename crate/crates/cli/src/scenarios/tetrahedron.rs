use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statsym_core::qubit::{
    effect_from_test, generalized_probability, test_probability, BlochVector, Outcome, TestSpec, CLOSED_FORM_TOL,
};
use statsym_core::Result;

use crate::fixtures::random_rotation;
use crate::report::{CheckKind, ScenarioReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetrahedronConfig {
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for TetrahedronConfig {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            beta: 1.0,
            seed: 0,
            tol: CLOSED_FORM_TOL,
        }
    }
}

/// Perpendiculars of a regular tetrahedron, pairwise cosine `−1/3`.
pub fn tetrahedron_vectors() -> [BlochVector; 4] {
    let s = 1.0 / 3f64.sqrt();
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
        .map(|[x, y, z]| BlochVector::new(nalgebra::Vector3::new(x * s, y * s, z * s)).expect("unit"))
}

/// Probability of a `+1` answer to the question for face `B` when face `A`
/// is known to be `+1`, asked with a test of level `α` and power `β`.
pub fn run_tetrahedron(cfg: &TetrahedronConfig) -> Result<ScenarioReport> {
    let TetrahedronConfig { alpha, beta, seed, tol } = *cfg;
    let faces = tetrahedron_vectors();
    let mut r = ScenarioReport::new("tetrahedron", Some(seed));

    let worst = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| (faces[i].dot(&faces[j]) + 1.0 / 3.0).abs())
        .fold(0.0, f64::max);
    r.residual(
        "face normals have pairwise cosine -1/3",
        CheckKind::Identity,
        worst,
        tol,
    );

    let expected = 1.0 - alpha / 3.0 - 2.0 * beta / 3.0;
    let (a, b) = (faces[0], faces[1]);
    let spec = TestSpec::new(b, alpha, beta, Outcome::Plus)?;
    let pi = generalized_probability(&a, &effect_from_test(&spec));
    r.note("probability", pi);
    r.close("pi = 1 - alpha/3 - 2 beta/3", CheckKind::Reference, expected, pi, tol);
    r.close(
        "pi from test parameters",
        CheckKind::Identity,
        test_probability(&a, &spec),
        pi,
        tol,
    );

    let spread = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| {
            let s = TestSpec::new(faces[j], alpha, beta, Outcome::Plus).expect("validated above");
            (generalized_probability(&faces[i], &effect_from_test(&s)) - expected).abs()
        })
        .fold(0.0, f64::max);
    r.residual(
        "same probability for every ordered pair of faces",
        CheckKind::Identity,
        spread,
        tol,
    );

    let ideal = TestSpec::new(b, 0.0, 1.0, Outcome::Plus)?;
    r.close(
        "ideal test gives 1/3",
        CheckKind::Reference,
        1.0 / 3.0,
        generalized_probability(&a, &effect_from_test(&ideal)),
        tol,
    );

    let flat = TestSpec::new(b, alpha, alpha, Outcome::Plus)?;
    let flat_e = effect_from_test(&flat);
    r.close(
        "alpha = beta gives r/2 = 1 - alpha",
        CheckKind::Oracle,
        1.0 - alpha,
        generalized_probability(&a, &flat_e),
        tol,
    );
    r.close(
        "alpha = beta agrees with the closed form",
        CheckKind::Identity,
        1.0 - alpha / 3.0 - 2.0 * alpha / 3.0,
        generalized_probability(&a, &flat_e),
        tol,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot = random_rotation(&mut rng);
    let turned = generalized_probability(&a.rotate(&rot), &effect_from_test(&spec).rotate(&rot));
    r.close(
        "rotating the tetrahedron leaves pi unchanged",
        CheckKind::Identity,
        pi,
        turned,
        tol,
    );
    Ok(r)
}
