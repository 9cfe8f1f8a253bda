use std::collections::HashSet;

use approx::assert_abs_diff_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::group::{
    find_intertwiner, generate_group, induced_parameter_action, invariant_measure, maximal_permissible_subgroup,
    s3_triangle, GroupAction, Subgroup,
};
use crate::linalg::{random_gaussian, random_unitary};

fn triangle_rep() -> (crate::group::Triangle, InvariantMeasure, Representation) {
    let t = s3_triangle();
    let nu = invariant_measure(&t.action);
    let rep = regular_representation(&t.action, &nu).unwrap();
    (t, nu, rep)
}

fn dims(blocks: &[SubspaceBasis]) -> Vec<usize> {
    blocks.iter().map(SubspaceBasis::len).collect()
}

#[test]
fn trivial_group_regular_rep() {
    let action = GroupAction::trivial(1);
    let rep = regular_representation(&action, &invariant_measure(&action)).unwrap();
    assert_eq!(rep.matrices().len(), 1);
    assert_eq!(rep.matrix(0), &CMatrix::identity(1, 1));
}

#[test]
fn regular_rep_transcribes_action_table() {
    let (t, _, rep) = triangle_rep();
    assert_eq!(rep.matrices().len(), 6);
    for g in 0..6 {
        let m = rep.matrix(g);
        for x in 0..6 {
            for y in 0..6 {
                let expected = if y == t.action.apply(x, g) { 1.0 } else { 0.0 };
                assert_eq!(m[(y, x)], re(expected));
            }
        }
    }
    let (comp, unit) = rep.residuals();
    assert!(comp < 1e-12 && unit < 1e-12);
}

#[test]
fn regular_character_counts_fixed_points() {
    let (g, action) = generate_group(&[vec![1, 2, 0, 3], vec![0, 1, 3, 2]]).unwrap();
    let rep = regular_representation(&action, &invariant_measure(&action)).unwrap();
    let chi = rep.character();
    for e in g.elements() {
        let fixed = (0..4).filter(|&x| action.apply(x, e) == x).count();
        assert_abs_diff_eq!(chi[e].re, fixed as f64, epsilon = 1e-14);
    }
    let (_, _, s3) = triangle_rep();
    let chi = s3.character();
    assert_eq!(chi[0].re, 6.0);
    assert!(chi[1..].iter().all(|c| c.norm() == 0.0));
}

#[test]
fn non_invariant_measure_rejected() {
    let (t, _, _) = triangle_rep();
    let w = vec![0.5, 0.1, 0.1, 0.1, 0.1, 0.1];
    let nu = InvariantMeasure::from_weights(w).unwrap();
    assert_eq!(
        regular_representation(&t.action, &nu).unwrap_err(),
        Error::NonInvariantMeasure
    );
}

#[test]
fn representation_validation() {
    let (t, _, rep) = triangle_rep();
    let mut ms = rep.matrices().to_vec();
    ms.swap(1, 2);
    assert!(Representation::new(t.group().clone(), ms).is_err());
    let ms = vec![CMatrix::identity(2, 2).scale(2.0); 6];
    assert!(Representation::new(t.group().clone(), ms).is_err());
}

#[test]
fn va_dimensions() {
    let (t, nu, _) = triangle_rep();
    assert_eq!(invariant_subspace_va(&t.colour, &nu).unwrap().len(), 2);
    for w in &t.windows {
        assert_eq!(invariant_subspace_va(w, &nu).unwrap().len(), 3);
    }
    let c = ParameterFunction::constant(6);
    let v = invariant_subspace_va(&c, &nu).unwrap();
    assert_eq!(v.len(), 1);
    let f = function_values(&v.vectors()[0], &nu);
    assert!(f.iter().all(|z| (z - re(1.0)).norm() < 1e-14));
}

#[test]
fn indicator_basis_normalization() {
    let (t, nu, _) = triangle_rep();
    let b = indicator_basis(&t.colour, &nu).unwrap();
    assert_eq!(b.len(), 2);
    for (k, v) in b.vectors().iter().enumerate() {
        let f = function_values(v, &nu);
        // ‖f‖² = Σ ν(φ) f(φ)² = 1 with f = √2 on its level set
        let norm2: f64 = f.iter().zip(nu.weights()).map(|(z, w)| w * z.norm_sqr()).sum();
        assert_abs_diff_eq!(norm2, 1.0, epsilon = 1e-14);
        for (x, fx) in f.iter().enumerate() {
            let expected = if t.colour.at(x) == k { 2f64.sqrt() } else { 0.0 };
            assert_abs_diff_eq!(fx.re, expected, epsilon = 1e-14);
        }
    }
    assert!(b.orthonormality_residual() < 1e-15);
    let one = indicator_basis(&ParameterFunction::constant(6), &nu).unwrap();
    let f = function_values(&one.vectors()[0], &nu);
    assert!(f.iter().all(|z| (z - re(1.0)).norm() < 1e-14));
}

#[test]
fn indicator_basis_requires_equal_masses() {
    let l = ParameterFunction::from_labels(&["x", "x", "y"]).unwrap();
    let nu = InvariantMeasure::uniform(3);
    assert_eq!(indicator_basis(&l, &nu).unwrap_err(), Error::UnequalLevelSets);
    assert_eq!(invariant_subspace_va(&l, &nu).unwrap().len(), 2);
}

#[test]
fn indicator_basis_spans_va() {
    let (t, nu, _) = triangle_rep();
    for l in t.windows.iter().chain([&t.colour]) {
        let va = invariant_subspace_va(l, &nu).unwrap();
        let ind = indicator_basis(l, &nu).unwrap();
        assert!(va.span_residual(&ind) < 1e-10);
        assert!(ind.span_residual(&va) < 1e-10);
    }
}

#[test]
fn va_invariant_under_maximal_subgroup() {
    let (t, nu, rep) = triangle_rep();
    for l in t.windows.iter().chain([&t.colour]) {
        let m = maximal_permissible_subgroup(l, &t.action).unwrap();
        let sub = rep.restrict(&m);
        let va = invariant_subspace_va(l, &nu).unwrap();
        assert!(invariance_residual(&sub, &va) < 1e-10);
    }
    // but a window space is not invariant under the whole group
    let va = invariant_subspace_va(&t.windows[0], &nu).unwrap();
    assert!(invariance_residual(&rep, &va) > 0.1);
}

#[test]
fn multiplication_operator_on_colour() {
    let (t, nu, _) = triangle_rep();
    let s = multiplication_operator(&t.colour, &[-1.0, 1.0], &nu).unwrap();
    let (vals, _) = hermitian_eigen(&s.compressed());
    assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
    for (k, f) in s.basis().vectors().iter().enumerate() {
        let sf = s.operator().matrix() * f;
        assert!((sf - f.scale(s.eigenvalues()[k])).norm() < 1e-15);
    }
    assert_abs_diff_eq!(s.operator().trace(), 0.0, epsilon = 1e-14);
    let s = multiplication_operator(&t.windows[0], &[0.0, 1.0, 2.0], &nu).unwrap();
    assert_abs_diff_eq!(s.operator().trace(), 3.0, epsilon = 1e-14);
}

#[test]
fn multiplication_operator_as_pointwise_product() {
    // on V it multiplies function values by the coded parameter
    let (t, nu, _) = triangle_rep();
    let l = &t.windows[1];
    let coding = [2.0, -1.0, 0.5];
    let s = multiplication_operator(l, &coding, &nu).unwrap();
    let f = s.basis().vectors()[0].scale(0.3) + s.basis().vectors()[2].scale(-1.2);
    let sf = s.operator().matrix() * &f;
    for x in 0..6 {
        assert_abs_diff_eq!(sf[x].re, coding[l.at(x)] * f[x].re, epsilon = 1e-14);
    }
}

#[test]
fn degenerate_coding_rejected() {
    let (t, nu, _) = triangle_rep();
    let err = multiplication_operator(&t.windows[0], &[0.0, 1.0, 0.0], &nu).unwrap_err();
    assert_eq!(err, Error::DegenerateCoding);
    assert!(multiplication_operator(&t.windows[0], &[0.0, 1.0], &nu).is_err());
}

#[test]
fn conjugation_identity_and_spectrum() {
    let (t, nu, _) = triangle_rep();
    let s = multiplication_operator(&t.windows[0], &[0.0, 1.0, 2.0], &nu).unwrap();
    let i6 = CMatrix::identity(6, 6);
    let same = conjugated_operator(s.operator(), &i6).unwrap();
    assert!(max_abs_diff(same.matrix(), s.operator().matrix()) < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let w = random_unitary(&mut rng, 6);
        let tmat = conjugated_operator(s.operator(), &w).unwrap();
        for (a, b) in tmat.spectrum().iter().zip(s.operator().spectrum()) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-10);
        }
        let v = transported_basis(s.basis(), &w).unwrap();
        let spectral = spectral_operator(s.eigenvalues(), &v).unwrap();
        assert!(max_abs_diff(spectral.matrix(), tmat.matrix()) < 1e-10);
    }
    let bad = CMatrix::identity(6, 6).scale(1.1);
    assert!(matches!(
        conjugated_operator(s.operator(), &bad),
        Err(Error::NonUnitary { .. })
    ));
}

#[test]
fn conjugation_by_intertwiner_maps_window_spaces() {
    // U_R(k) = M(k)† carries V^a onto V^b when λ^b(φ) = λ^a(φk)
    let (t, nu, rep) = triangle_rep();
    let [a, b, _] = &t.windows;
    let k = find_intertwiner(a, b, &t.action).unwrap();
    let w = rep.matrix(k).adjoint();
    let va = invariant_subspace_va(a, &nu).unwrap();
    let vb = invariant_subspace_va(b, &nu).unwrap();
    let moved = transported_basis(&va, &w).unwrap();
    assert!(vb.span_residual(&moved) < 1e-12);
    let sa = multiplication_operator(a, &[0.0, 1.0, 2.0], &nu).unwrap();
    let sb = multiplication_operator(b, &[0.0, 1.0, 2.0], &nu).unwrap();
    let tb = conjugated_operator(sa.operator(), &w).unwrap();
    assert!(max_abs_diff(tb.matrix(), sb.operator().matrix()) < 1e-12);
}

#[test]
fn eigen_transport_for_colour_under_full_group() {
    let (t, nu, rep) = triangle_rep();
    let s = multiplication_operator(&t.colour, &[-1.0, 1.0], &nu).unwrap();
    let full = Subgroup::full(t.group());
    let ind = induced_parameter_action(&t.colour, &t.action, &full).unwrap();
    assert!(eigen_transport_check(&rep, &s, &ind).unwrap());
    // the cyclic subgroup fixes both colours
    let c3 = t.cyclic_subgroup();
    let ind_c3 = induced_parameter_action(&t.colour, &t.action, &c3).unwrap();
    assert!((0..3).all(|g| ind_c3.apply(0, g) == 0 && ind_c3.apply(1, g) == 1));
    assert!(eigen_transport_check(&rep.restrict(&c3), &s, &ind_c3).unwrap());
    let e = Subgroup::trivial(t.group());
    let ind_e = induced_parameter_action(&t.colour, &t.action, &e).unwrap();
    assert!(eigen_transport_check(&rep.restrict(&e), &s, &ind_e).unwrap());
}

#[test]
fn eigen_transport_detects_wrong_value_map() {
    let (t, nu, rep) = triangle_rep();
    let s = multiplication_operator(&t.colour, &[-1.0, 1.0], &nu).unwrap();
    // reflections swap the colours, so a value action fixing them is wrong
    let fixed = GroupAction::new(t.group().clone(), 2, vec![vec![0, 1]; 6]).unwrap();
    assert!(!eigen_transport_check(&rep, &s, &fixed).unwrap());
    // value action over a different group is rejected
    assert!(eigen_transport_check(&rep, &s, &GroupAction::trivial(2)).is_err());
}

#[test]
fn eigen_transport_for_windows_under_stabilizer() {
    let (t, nu, rep) = triangle_rep();
    for w in &t.windows {
        let m = maximal_permissible_subgroup(w, &t.action).unwrap();
        let ind = induced_parameter_action(w, &t.action, &m).unwrap();
        let s = multiplication_operator(w, &[0.0, 1.0, 2.0], &nu).unwrap();
        assert!(eigen_transport_check(&rep.restrict(&m), &s, &ind).unwrap());
    }
    // the cyclic subgroup fails the permissibility precondition
    let err = induced_parameter_action(&t.windows[0], &t.action, &t.cyclic_subgroup());
    assert_eq!(err.unwrap_err(), Error::NotPermissible);
}

/// Irreducible dimensions of S₃ from class and abelianization counts.
fn s3_regular_dims_oracle(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut classes: HashSet<Vec<usize>> = HashSet::new();
    for x in g.elements() {
        let mut c: Vec<usize> = g.elements().map(|h| g.mul(g.mul(g.inverse(h), x), h)).collect();
        c.sort_unstable();
        c.dedup();
        classes.insert(c);
    }
    let commutators: Vec<usize> = g
        .elements()
        .flat_map(|a| g.elements().map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)))
        .collect();
    let derived = Subgroup::generated_by(g, &commutators);
    let linear = n / derived.order();
    let remaining = classes.len() - linear;
    let rest = n - linear;
    // one remaining irreducible for S₃: d² = rest
    assert_eq!(remaining, 1);
    let d = (rest as f64).sqrt().round() as usize;
    assert_eq!(d * d, rest);
    let mut out = vec![1; linear];
    out.extend(std::iter::repeat_n(d, d));
    out.sort_unstable();
    out
}

#[test]
fn s3_regular_decomposition() {
    let (t, _, rep) = triangle_rep();
    let expected = s3_regular_dims_oracle(t.group());
    assert_eq!(expected, vec![1, 1, 2, 2]);
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = decompose_irreducible(&rep, &mut rng);
        assert_eq!(dims(&blocks), expected);
        let mut all = Vec::new();
        for b in &blocks {
            assert!(invariance_residual(&rep, b) < 1e-8);
            // irreducible iff ⟨χ, χ⟩ = 1
            let q = b.matrix();
            let norm: f64 = rep
                .matrices()
                .iter()
                .map(|m| (q.adjoint() * m * &q).trace().norm_sqr())
                .sum::<f64>()
                / 6.0;
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-9);
            all.extend(b.vectors().iter().cloned());
        }
        let whole = SubspaceBasis::new(6, all).unwrap();
        assert_eq!(whole.len(), 6);
    }
}

#[test]
fn trivial_group_decomposes_into_lines() {
    let action = GroupAction::trivial(4);
    let rep = regular_representation(&action, &invariant_measure(&action)).unwrap();
    let blocks = decompose_irreducible(&rep, &mut ChaCha8Rng::seed_from_u64(1));
    assert_eq!(dims(&blocks), vec![1, 1, 1, 1]);
}

#[test]
fn cyclic_regular_rep_matches_fourier_modes() {
    let (_, action) = generate_group(&[vec![1, 2, 0]]).unwrap();
    let rep = regular_representation(&action, &invariant_measure(&action)).unwrap();
    let blocks = decompose_irreducible(&rep, &mut ChaCha8Rng::seed_from_u64(2));
    assert_eq!(dims(&blocks), vec![1, 1, 1]);
    // each block is spanned by a discrete Fourier vector (ω^{jx})/√3
    let w = std::f64::consts::TAU / 3.0;
    let fourier: Vec<CVector> = (0..3)
        .map(|j| CVector::from_fn(3, |x, _| Complex64::from_polar(1.0 / 3f64.sqrt(), w * (j * x) as f64)))
        .collect();
    for b in &blocks {
        let hits = fourier.iter().filter(|f| b.distance(f) < 1e-10).count();
        assert_eq!(hits, 1);
    }
}

#[test]
fn schur_classification() {
    let (_, _, rep) = triangle_rep();
    let blocks = decompose_irreducible(&rep, &mut ChaCha8Rng::seed_from_u64(4));
    let q = blocks[3].matrix();
    let ms: Vec<CMatrix> = rep.matrices().iter().map(|m| q.adjoint() * m * &q).collect();
    let irrep = Representation::new(rep.group().clone(), ms).unwrap();
    let pairing: Vec<usize> = (0..6).collect();
    assert_eq!(
        schur_check(&irrep, &irrep, &CMatrix::zeros(2, 2), &pairing),
        SchurClass::Zero
    );
    assert_eq!(
        schur_check(&irrep, &irrep, &CMatrix::identity(2, 2), &pairing),
        SchurClass::Isomorphism
    );
    let a = random_gaussian(&mut ChaCha8Rng::seed_from_u64(5), 2, 2);
    assert_eq!(schur_check(&irrep, &irrep, &a, &pairing), SchurClass::Violation);
    // the other 2-dimensional block is isomorphic: Q₂†Q₃-type maps fail, but the averaged map intertwines
    let q2 = blocks[2].matrix();
    let ms2: Vec<CMatrix> = rep.matrices().iter().map(|m| q2.adjoint() * m * &q2).collect();
    let irrep2 = Representation::new(rep.group().clone(), ms2).unwrap();
    let seed = random_gaussian(&mut ChaCha8Rng::seed_from_u64(6), 2, 2);
    let mut avg = CMatrix::zeros(2, 2);
    for g in 0..6 {
        avg += irrep.matrix(g) * &seed * irrep2.matrix(g).adjoint();
    }
    assert_eq!(schur_check(&irrep, &irrep2, &avg, &pairing), SchurClass::Isomorphism);
    // a 1-dimensional and a 2-dimensional irreducible admit only the zero intertwiner
    let q0 = blocks[0].matrix();
    let ms0: Vec<CMatrix> = rep.matrices().iter().map(|m| q0.adjoint() * m * &q0).collect();
    let line = Representation::new(rep.group().clone(), ms0).unwrap();
    let seed = random_gaussian(&mut ChaCha8Rng::seed_from_u64(7), 1, 2);
    let mut avg = CMatrix::zeros(1, 2);
    for g in 0..6 {
        avg += line.matrix(g) * &seed * irrep.matrix(g).adjoint();
    }
    assert_eq!(schur_check(&line, &irrep, &avg, &pairing), SchurClass::Zero);
}

#[test]
fn sectors_classify_vectors() {
    let (_, _, rep) = triangle_rep();
    let sd = sector_decomposition(&rep, &mut ChaCha8Rng::seed_from_u64(9));
    let summary = serde_json::to_string(&sd.summary()).unwrap();
    assert_eq!(
        summary,
        r#"{"sectors":[{"dim":1,"label":0},{"dim":1,"label":1},{"dim":2,"label":2},{"dim":2,"label":3}]}"#
    );
    let v = sd.sectors[2].basis.vectors()[1].clone();
    assert_eq!(sd.classify(&v), SectorMembership::PureSector { label: 2 });
    let w = &v + &sd.sectors[0].basis.vectors()[0];
    assert_eq!(sd.classify(&w), SectorMembership::CrossSector { labels: vec![0, 2] });
    assert_eq!(sd.classify(&CVector::zeros(6)), SectorMembership::Zero);
    let weights = sd.weights(&w);
    assert_abs_diff_eq!(weights.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
}

#[test]
fn generated_representation_from_window_blocks() {
    let (t, nu, rep) = triangle_rep();
    let [a, b, _] = &t.windows;
    let ga = maximal_permissible_subgroup(a, &t.action).unwrap();
    let gb = maximal_permissible_subgroup(b, &t.action).unwrap();
    // the two stabilizers generate S₃
    let gens: Vec<usize> = ga.elements().iter().chain(gb.elements()).copied().collect();
    assert_eq!(Subgroup::generated_by(t.group(), &gens), Subgroup::full(t.group()));

    let qa = invariant_subspace_va(a, &nu).unwrap().matrix();
    let k = find_intertwiner(a, b, &t.action).unwrap();
    let qb = rep.matrix(k).adjoint() * &qa;
    let vb = invariant_subspace_va(b, &nu).unwrap();
    assert!(vb.span_residual(&SubspaceBasis::from_matrix(&qb).unwrap()) < 1e-12);

    let gen = GeneratedRepresentation::new(
        &rep,
        vec![
            SubgroupBlock {
                subgroup: ga.clone(),
                connector: qa.clone(),
            },
            SubgroupBlock {
                subgroup: gb.clone(),
                connector: qb,
            },
        ],
    )
    .unwrap();
    assert_eq!(gen.dim(), 3);
    let ta = ga.elements()[1];
    let tb = gb.elements()[1];
    // single letters compress the regular representation
    let fa = gen.factor(0, ta).unwrap();
    assert!(max_abs_diff(&fa, &(qa.adjoint() * rep.matrix(ta) * &qa)) < 1e-15);
    // involutions square to the identity word
    assert!(gen.word_discrepancy(&[(0, ta), (0, ta)], &[]).unwrap() < 1e-14);
    assert!(gen.word_discrepancy(&[(0, ta)], &[(1, tb)]).is_err());
    assert!(gen.factor(0, tb).is_err());
    // the braid relation t_a t_b t_a = t_b t_a t_b holds in S₃; report the discrepancy
    let lhs = [(0, ta), (1, tb), (0, ta)];
    let rhs = [(1, tb), (0, ta), (1, tb)];
    assert_eq!(gen.element(&lhs), gen.element(&rhs));
    let d = gen.word_discrepancy(&lhs, &rhs).unwrap();
    assert!(d.is_finite());
    let w = gen.word(&lhs).unwrap();
    assert!(crate::linalg::unitarity_residual(&w) < 1e-12);
}
