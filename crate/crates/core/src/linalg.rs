//! Dense complex linear-algebra helpers shared by the Hilbert-space modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(re)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermitian_residual(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

/// `max |(M†M - I)_ij|`; infinite for non-square input.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    isometry_residual(m)
}

/// `max |(M†M - I)_ij|` for a tall matrix with orthonormal columns.
pub fn isometry_residual(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    max_abs_diff(&gram, &CMatrix::identity(m.ncols(), m.ncols()))
}

/// Rank-one projector `v v†`.
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted ascending.
/// Eigenvectors are the columns of the returned matrix, in the same order.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Matrix with the given columns.
pub fn from_columns(dim: usize, columns: &[CVector]) -> CMatrix {
    let mut m = CMatrix::zeros(dim, columns.len());
    for (j, col) in columns.iter().enumerate() {
        m.set_column(j, col);
    }
    m
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = random_gaussian(rng, n, n);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-ish unitary from the QR factorization of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = random_gaussian(rng, n, n);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    // fix column phases so the distribution does not depend on QR sign conventions
    let mut u = q.clone();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { re(1.0) };
        for i in 0..n {
            u[(i, j)] = q[(i, j)] * phase;
        }
    }
    u
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Uniformly distributed unit vector in `C^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    let v = random_gaussian(rng, n, 1).column(0).into_owned();
    let norm = v.norm();
    v.unscale(norm)
}
