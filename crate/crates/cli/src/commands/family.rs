use anyhow::Result;
use krall_core::families::build_family_capped;
use krall_core::{FamilySpec, Rational, Scalar};

use super::{meta, number, with_scalar};
use crate::config::{params_label, RunConfig};
use crate::output::{Document, PolynomialRow};

/// Coefficients of `p_0, ..., p_N` for the largest requested `N`.
pub fn run(cfg: &RunConfig) -> Result<Document> {
    let n = *cfg.require_ns()?.iter().max().expect("nonempty");
    let mut doc = Document::new(meta(cfg));
    for spec in cfg.require_family()? {
        doc.polynomials.extend(with_scalar!(cfg.mode, table(spec, n, cfg))?);
    }
    Ok(doc)
}

fn table<T: Scalar>(spec: &FamilySpec<Rational>, n: usize, cfg: &RunConfig) -> Result<Vec<PolynomialRow>> {
    let family = build_family_capped(&spec.map(T::from_rational), n, cfg.cap::<T>())?;
    Ok(family
        .iter()
        .enumerate()
        .map(|(degree, p)| PolynomialRow {
            family: spec.tag().to_string(),
            params: params_label(spec),
            degree,
            coeffs: p.coeffs().iter().map(number).collect(),
        })
        .collect())
}
