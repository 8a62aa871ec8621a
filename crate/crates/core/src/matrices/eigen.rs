use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matrices::rep::MatrixRep;
use crate::scalar::Scalar;

/// Eigenvalues of a (generally nonsymmetric) matrix, rounded to `f64` first.
pub fn eigenvalues<T: Scalar>(m: &MatrixRep<T>) -> Vec<Complex64> {
    let data: DMatrix<f64> = m.data().map(|v| v.to_f64_lossy());
    if data.nrows() == 0 {
        return Vec::new();
    }
    data.complex_eigenvalues().iter().copied().collect()
}

/// One computed eigenvalue matched to one expected value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub expected: f64,
    pub computed_re: f64,
    pub computed_im: f64,
    /// `|computed - expected| / max(1, max_k |expected_k|)`.
    pub mismatch: f64,
}

/// Pairs computed eigenvalues with expected ones greedily, nearest pair first,
/// so the result does not depend on the order either list comes in.
///
/// Mismatches are relative to the spectral scale `max(1, max |expected|)`,
/// the natural unit for eigenvalue errors of a nonsymmetric matrix.
pub fn match_spectrum(computed: &[Complex64], expected: &[f64]) -> Vec<EigenPair> {
    let scale = expected.iter().fold(1.0f64, |s, e| s.max(e.abs()));
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, c) in computed.iter().enumerate() {
        for (j, &e) in expected.iter().enumerate() {
            candidates.push(((c - Complex64::new(e, 0.0)).norm(), i, j));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_c = vec![false; computed.len()];
    let mut used_e = vec![false; expected.len()];
    let mut pairs: Vec<(usize, EigenPair)> = Vec::new();
    for (dist, i, j) in candidates {
        if used_c[i] || used_e[j] {
            continue;
        }
        used_c[i] = true;
        used_e[j] = true;
        pairs.push((
            j,
            EigenPair {
                expected: expected[j],
                computed_re: computed[i].re,
                computed_im: computed[i].im,
                mismatch: dist / scale,
            },
        ));
    }
    pairs.sort_by_key(|(j, _)| *j);
    pairs.into_iter().map(|(_, p)| p).collect()
}
