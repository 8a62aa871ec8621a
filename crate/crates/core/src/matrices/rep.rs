use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// What a [`MatrixRep`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixTag {
    Tau,
    Collocation,
    DiffMat(usize),
    Transition,
    TransitionInverse,
    ChristoffelDiag,
}

impl fmt::Display for MatrixTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixTag::Tau => f.write_str("tau"),
            MatrixTag::Collocation => f.write_str("collocation"),
            MatrixTag::DiffMat(k) => write!(f, "diffmat({k})"),
            MatrixTag::Transition => f.write_str("transition"),
            MatrixTag::TransitionInverse => f.write_str("transition_inverse"),
            MatrixTag::ChristoffelDiag => f.write_str("christoffel_diag"),
        }
    }
}

/// A square dense matrix together with what it is and how it was built.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<T: Scalar> {
    tag: MatrixTag,
    data: DMatrix<T>,
    provenance: String,
    flagged: Vec<usize>,
}

impl<T: Scalar> MatrixRep<T> {
    pub fn new(tag: MatrixTag, data: DMatrix<T>, provenance: impl Into<String>) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{tag} must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self {
            tag,
            data,
            provenance: provenance.into(),
            flagged: Vec::new(),
        })
    }

    pub(crate) fn with_flagged(mut self, flagged: Vec<usize>) -> Self {
        self.flagged = flagged;
        self
    }

    pub fn tag(&self) -> MatrixTag {
        self.tag
    }

    pub fn data(&self) -> &DMatrix<T> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<T> {
        self.data
    }

    /// The formula or construction path that produced the entries.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Node indices (0-based) where a simplified formula was singular and the
    /// general assembly was used instead.
    pub fn flagged(&self) -> &[usize] {
        &self.flagged
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.data[(i, j)].clone()).collect())
            .collect()
    }

    pub fn to_f64(&self) -> MatrixRep<f64> {
        MatrixRep {
            tag: self.tag,
            data: self.data.map(|v| v.to_f64_lossy()),
            provenance: self.provenance.clone(),
            flagged: self.flagged.clone(),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.data)
    }
}

/// Dense product in any scalar field.
pub fn matmul<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.ncols(), b.nrows(), "matmul: inner dimensions differ");
    DMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        (0..a.ncols()).fold(T::zero(), |acc, k| acc + a[(i, k)].clone() * b[(k, j)].clone())
    })
}

/// Maximum absolute row sum.
pub fn norm_inf<T: Scalar>(m: &DMatrix<T>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_f64_lossy().abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `max_{ij} |a_ij - b_ij| / max(|a|_max, |b|_max, floor)`.
pub fn max_relative_difference<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>, floor: f64) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let mut diff = 0.0f64;
    let mut scale = floor;
    for (x, y) in a.iter().zip(b.iter()) {
        diff = diff.max((x.clone() - y.clone()).to_f64_lossy().abs());
        scale = scale.max(x.to_f64_lossy().abs()).max(y.to_f64_lossy().abs());
    }
    diff / scale
}
