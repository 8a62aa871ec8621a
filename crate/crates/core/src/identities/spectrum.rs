use crate::error::{Error, Result};
use crate::families::{operator_of, FamilySpec};
use crate::identities::{IdentityReport, IdentityTag, Settings};
use crate::matrices::{collocation_rep, eigenvalues, match_spectrum};
use crate::rootfinding::NodeSet;
use crate::scalar::Scalar;

/// Eigenvalues of `D^c` on arbitrary distinct nodes against
/// `mu_0, ..., mu_{N-1}`. The spectrum does not depend on the nodes, so any
/// node set of size `N` should reproduce it.
pub fn spectrum_report<T: Scalar>(
    spec: &FamilySpec<T>,
    n: usize,
    nodes: &NodeSet,
    settings: &Settings,
) -> Result<IdentityReport> {
    if nodes.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "N = {n} but {} nodes given",
            nodes.len()
        )));
    }
    let dc = collocation_rep(&operator_of(spec), nodes);
    let expected: Vec<f64> = (0..n).map(|m| spec.eigenvalue(m).to_f64_lossy()).collect();
    let pairs = match_spectrum(&eigenvalues(&dc), &expected);
    let mut report = IdentityReport::new(IdentityTag::Spectrum, spec, n, settings);
    for (m, pair) in pairs.iter().enumerate() {
        report.push(m, None, pair.mismatch);
    }
    report.spectrum = pairs;
    if nodes.family().is_none() {
        report
            .notes
            .push("nodes supplied by the caller, not zeros of p_N".into());
    }
    Ok(report.finish(|m| expected[m]))
}
