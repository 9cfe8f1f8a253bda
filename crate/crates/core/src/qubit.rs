//! Spin-½ effect calculus on the Bloch ball.
//!
//! An effect is stored as `(r, c, u)` with matrix `½(rI + c u·σ)`. Pure
//! states have `r = c = 1`, density matrices `r = 1`. A hypothesis test along
//! `b` with level `α` and power `β` reporting `+1` has `r = 2−α−β`,
//! `c = β−α`, `u = b`.

use std::fmt;

use nalgebra::{Rotation3, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{re, CMatrix, CVector};

/// Tolerance for closed-form identities.
pub const CLOSED_FORM_TOL: f64 = 1e-12;
/// Tolerance where a numeric eigensolver is involved.
pub const NUMERIC_TOL: f64 = 1e-10;

/// Unit 3-vector labelling a spin direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    /// Requires `‖v‖ = 1` within [`CLOSED_FORM_TOL`].
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || (n - 1.0).abs() > CLOSED_FORM_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self(v))
    }

    /// Rescales any finite nonzero vector.
    pub fn normalized(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self(v / n))
    }

    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(st * cp, st * sp, ct))
    }

    pub fn x_axis() -> Self {
        Self(Vector3::x())
    }

    pub fn z_axis() -> Self {
        Self(Vector3::z())
    }

    /// Uniform on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v = Vector3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
            if v.norm() > 1e-6 {
                return Self(v.normalize());
            }
        }
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        Self(rot * self.0)
    }

    /// `u·σ`.
    pub fn sigma_dot(&self) -> CMatrix {
        sigma_dot(&self.0)
    }

    /// Unit eigenvector of `u·σ` for eigenvalue `+1`.
    pub fn state_vector(&self) -> CVector {
        let [x, y, z] = [self.0.x, self.0.y, self.0.z];
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        let (s, c) = (theta / 2.0).sin_cos();
        CVector::from_vec(vec![re(c), Complex64::from_polar(s, phi)])
    }
}

impl std::ops::Neg for BlochVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Serialize for BlochVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.x, self.0.y, self.0.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlochVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        Self::new(Vector3::new(x, y, z)).map_err(serde::de::Error::custom)
    }
}

/// The three Pauli matrices `[σx, σy, σz]`.
pub fn pauli_matrices() -> [CMatrix; 3] {
    let o = re(0.0);
    let i = Complex64::i();
    [
        CMatrix::from_row_slice(2, 2, &[o, re(1.0), re(1.0), o]),
        CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        CMatrix::from_row_slice(2, 2, &[re(1.0), o, o, re(-1.0)]),
    ]
}

fn sigma_dot(v: &Vector3<f64>) -> CMatrix {
    let [sx, sy, sz] = pauli_matrices();
    sx * re(v.x) + sy * re(v.y) + sz * re(v.z)
}

/// Reported result of a two-valued question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            _ => Err(Error::InvalidEffect(format!("outcome must be +1 or -1, got {s}"))),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        })
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.sign() as i64)
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_sign(i64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Qubit effect `½(rI + c u·σ)`.
///
/// Invariants: `0 ≤ c ≤ 1`, `c ≤ r ≤ 2−c`, and `u` is present iff `c > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effect {
    r: f64,
    c: f64,
    u: Option<BlochVector>,
}

impl Effect {
    /// Bounds are checked with [`CLOSED_FORM_TOL`] slack; `c` is clamped to `[0, 1]`.
    pub fn new(r: f64, c: f64, u: Option<BlochVector>) -> Result<Self> {
        let tol = CLOSED_FORM_TOL;
        if !r.is_finite() || !c.is_finite() {
            return Err(Error::InvalidEffect("non-finite coordinates".into()));
        }
        if c < -tol || c > 1.0 + tol {
            return Err(Error::InvalidEffect(format!("c = {c} outside [0, 1]")));
        }
        if r < c - tol || r > 2.0 - c + tol {
            return Err(Error::InvalidEffect(format!("r = {r} outside [c, 2-c] for c = {c}")));
        }
        let c = c.clamp(0.0, 1.0);
        let u = if c == 0.0 {
            None
        } else {
            Some(u.ok_or_else(|| Error::InvalidEffect("c > 0 requires a direction".into()))?)
        };
        Ok(Self { r, c, u })
    }

    /// From `r` and the vector `c·u`.
    pub fn from_components(r: f64, cu: Vector3<f64>) -> Result<Self> {
        let c = cu.norm();
        if c == 0.0 {
            Self::new(r, 0.0, None)
        } else {
            Self::new(r, c, Some(BlochVector(cu / c)))
        }
    }

    pub fn identity() -> Self {
        Self {
            r: 2.0,
            c: 0.0,
            u: None,
        }
    }

    pub fn zero() -> Self {
        Self {
            r: 0.0,
            c: 0.0,
            u: None,
        }
    }

    /// `½I`.
    pub fn half() -> Self {
        Self {
            r: 1.0,
            c: 0.0,
            u: None,
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `None` for uninformative effects.
    pub fn u(&self) -> Option<BlochVector> {
        self.u
    }

    pub fn direction(&self) -> Result<BlochVector> {
        self.u.ok_or(Error::DirectionUnrecoverable)
    }

    /// The vector `c·u`.
    pub fn cu(&self) -> Vector3<f64> {
        self.u.map_or_else(Vector3::zeros, |u| u.0 * self.c)
    }

    /// `(½(r−c), ½(r+c))`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        (0.5 * (self.r - self.c), 0.5 * (self.r + self.c))
    }

    pub fn matrix(&self) -> CMatrix {
        (CMatrix::identity(2, 2) * re(self.r) + sigma_dot(&self.cu())) * re(0.5)
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        Self {
            u: self.u.map(|u| u.rotate(rot)),
            ..*self
        }
    }

    /// Matrix sum, read as `(r₁+r₂, c₁u₁+c₂u₂)`; fails unless the sum is `≤ I`.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Self::from_components(self.r + other.r, self.cu() + other.cu())
    }

    /// Matrix form `α·E` for `0 ≤ α ≤ 1`.
    pub fn scaled(&self, a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidEffect(format!("scale {a} outside [0, 1]")));
        }
        Self::from_components(a * self.r, a * self.cu())
    }
}

/// Test of `H₀: λ^b = +1` with level `alpha` and power `beta`, and the reported outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestSpec {
    b: BlochVector,
    alpha: f64,
    beta: f64,
    outcome: Outcome,
}

impl TestSpec {
    pub fn new(b: BlochVector, alpha: f64, beta: f64, outcome: Outcome) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidProbability(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if beta < alpha {
            return Err(Error::PowerlessTest);
        }
        Ok(Self {
            b,
            alpha,
            beta,
            outcome,
        })
    }

    pub fn b(&self) -> BlochVector {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    /// Equivalent `+1` form: direction negated, error probabilities exchanged.
    pub fn canonical(&self) -> Self {
        match self.outcome {
            Outcome::Plus => *self,
            Outcome::Minus => Self {
                b: -self.b,
                alpha: 1.0 - self.beta,
                beta: 1.0 - self.alpha,
                outcome: Outcome::Plus,
            },
        }
    }
}

/// Projector onto spin `outcome` along `b`.
pub fn pure_state(b: BlochVector, outcome: Outcome) -> Effect {
    Effect {
        r: 1.0,
        c: 1.0,
        u: Some(if outcome == Outcome::Plus { b } else { -b }),
    }
}

pub fn effect_from_test(spec: &TestSpec) -> Effect {
    let TestSpec {
        b,
        alpha,
        beta,
        outcome,
    } = *spec;
    let c = beta - alpha;
    let u = (c > 0.0).then_some(b);
    let plus = Effect {
        r: 2.0 - alpha - beta,
        c,
        u,
    };
    match outcome {
        Outcome::Plus => plus,
        Outcome::Minus => complement_effect(&plus),
    }
}

/// Inverse of [`effect_from_test`], returned in `+1` form.
pub fn test_from_effect(e: &Effect) -> Result<TestSpec> {
    if e.c <= CLOSED_FORM_TOL {
        return Err(Error::DirectionUnrecoverable);
    }
    let b = e.direction()?;
    let alpha = ((2.0 - e.r - e.c) / 2.0).clamp(0.0, 1.0);
    let beta = ((2.0 - e.r + e.c) / 2.0).clamp(0.0, 1.0);
    TestSpec::new(b, alpha, beta, Outcome::Plus)
}

/// State after a reported `+1` along `b` with posterior error `p1 ∈ [0, ½]`.
pub fn mixed_from_posterior(b: BlochVector, p1: f64) -> Result<Effect> {
    if !(0.0..=0.5).contains(&p1) {
        return Err(Error::InvalidProbability(format!("p1 = {p1} outside [0, 1/2]")));
    }
    Effect::new(1.0, 1.0 - 2.0 * p1, Some(b))
}

/// `½(1 + a·b)`, evaluated as `¼‖a+b‖²` or `1 − ¼‖a−b‖²` so that `b = ±a` is exact.
pub fn born_pure(a: &BlochVector, b: &BlochVector) -> f64 {
    if a.dot(b) < 0.0 {
        0.25 * (a.0 + b.0).norm_squared()
    } else {
        1.0 - 0.25 * (a.0 - b.0).norm_squared()
    }
}

/// `tr(E_a E_b)` with pure-state projectors.
pub fn born_trace(a: &BlochVector, b: &BlochVector) -> f64 {
    let ea = pure_state(*a, Outcome::Plus).matrix();
    let eb = pure_state(*b, Outcome::Plus).matrix();
    (ea * eb).trace().re
}

/// `|⟨v_a, v_b⟩|²` with explicit eigenvectors.
pub fn born_amplitude(a: &BlochVector, b: &BlochVector) -> f64 {
    a.state_vector().dotc(&b.state_vector()).norm_sqr()
}

/// `π = ½(r + c a·u)` for the pure state `a`.
pub fn generalized_probability(a: &BlochVector, e: &Effect) -> f64 {
    0.5 * (e.r + a.0.dot(&e.cu()))
}

/// `1 − ½(α+β) + ½(β−α) a·b` for the `+1` form of `spec`.
pub fn test_probability(a: &BlochVector, spec: &TestSpec) -> f64 {
    let s = spec.canonical();
    1.0 - 0.5 * (s.alpha + s.beta) + 0.5 * (s.beta - s.alpha) * a.dot(&s.b)
}

/// Effect with matrix `I − E`.
pub fn complement_effect(e: &Effect) -> Effect {
    Effect {
        r: 2.0 - e.r,
        c: e.c,
        u: e.u.map(|u| -u),
    }
}

/// Effect of choosing between two experiments by a fair coin.
pub fn coin_mixture(e1: &Effect, e2: &Effect) -> Effect {
    let r = 0.5 * (e1.r + e2.r);
    let cu = 0.5 * (e1.cu() + e2.cu());
    let c = cu.norm();
    if c == 0.0 {
        Effect { r, c: 0.0, u: None }
    } else {
        Effect {
            r,
            c: c.min(1.0),
            u: Some(BlochVector(cu / c)),
        }
    }
}

/// Signed expected spin component for true value `lambda`.
///
/// `λ = +1` gives `(1−2α)b`, `λ = −1` gives `(2β−1)b`; the two sum to `2c·u`.
pub fn expected_component(spec: &TestSpec, lambda: Outcome) -> Vector3<f64> {
    let s = spec.canonical();
    let b = s.b.0;
    match lambda {
        Outcome::Plus => b * (1.0 - 2.0 * s.alpha),
        Outcome::Minus => b * (2.0 * s.beta - 1.0),
    }
}

/// JSON form of an effect: either coordinates or a test.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EffectDoc {
    Coordinates {
        r: f64,
        c: f64,
        #[serde(default)]
        u: Option<BlochVector>,
    },
    Test {
        alpha: f64,
        beta: f64,
        b: BlochVector,
        outcome: Outcome,
    },
}

impl TryFrom<EffectDoc> for Effect {
    type Error = Error;
    fn try_from(doc: EffectDoc) -> Result<Self> {
        match doc {
            EffectDoc::Coordinates { r, c, u } => Effect::new(r, c, u),
            EffectDoc::Test {
                alpha,
                beta,
                b,
                outcome,
            } => Ok(effect_from_test(&TestSpec::new(b, alpha, beta, outcome)?)),
        }
    }
}

impl From<Effect> for EffectDoc {
    fn from(e: Effect) -> Self {
        EffectDoc::Coordinates { r: e.r, c: e.c, u: e.u }
    }
}

impl Serialize for Effect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EffectDoc::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Effect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Effect::try_from(EffectDoc::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
