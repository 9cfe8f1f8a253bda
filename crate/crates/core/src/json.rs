//! JSON encodings of complex vectors and matrices as arrays of `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{CMatrix, CVector};
use crate::{Error, Result};

pub type ComplexPair = [f64; 2];

pub fn vector_to_pairs(v: &CVector) -> Vec<ComplexPair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vector_from_pairs(pairs: &[ComplexPair]) -> CVector {
    CVector::from_iterator(pairs.len(), pairs.iter().map(|&[re, im]| Complex64::new(re, im)))
}

/// Row-major nested arrays.
pub fn matrix_to_pairs(m: &CMatrix) -> Vec<Vec<ComplexPair>> {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_pairs(rows: &[Vec<ComplexPair>]) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bad.len(),
        });
    }
    Ok(CMatrix::from_fn(n, m, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

/// Serde adapter for a single complex matrix field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixDoc(pub Vec<Vec<ComplexPair>>);

impl From<&CMatrix> for MatrixDoc {
    fn from(m: &CMatrix) -> Self {
        MatrixDoc(matrix_to_pairs(m))
    }
}

impl TryFrom<&MatrixDoc> for CMatrix {
    type Error = Error;
    fn try_from(doc: &MatrixDoc) -> Result<Self> {
        matrix_from_pairs(&doc.0)
    }
}
