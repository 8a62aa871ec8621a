use anyhow::{bail, Result};
use krall_core::{FamilySpec, Rational, Scalar};

use super::{exact_family_and_zeros, meta, with_scalar};
use crate::cli::Mode;
use crate::config::{params_label, RunConfig};
use crate::output::{Document, Real, ZeroRow};

/// Sorted zeros of `p_N` with `|p_N(x_n)|`, for every family and `N`.
pub fn run(cfg: &RunConfig) -> Result<Document> {
    if cfg.mode == Mode::Rational {
        bail!("zeros are irrational in general; use --mode float or double-double");
    }
    let mut doc = Document::new(meta(cfg));
    for spec in cfg.require_family()? {
        for &n in cfg.require_ns()? {
            doc.zeros.extend(with_scalar!(cfg.mode, rows(spec, n, cfg))?);
        }
    }
    let worst = doc.zeros.iter().map(|z| z.residual.0).fold(0.0, f64::max);
    doc.summary.max_residual = Some(Real(worst));
    Ok(doc)
}

fn rows<T: Scalar>(spec: &FamilySpec<Rational>, n: usize, cfg: &RunConfig) -> Result<Vec<ZeroRow>> {
    let (_, nodes) = exact_family_and_zeros::<T>(spec, n, cfg)?;
    let residuals = nodes.residuals().unwrap_or_default();
    Ok(nodes
        .points()
        .iter()
        .enumerate()
        .map(|(i, &x)| ZeroRow {
            family: spec.tag().to_string(),
            params: params_label(spec),
            big_n: n,
            n: i + 1,
            x: Real(x),
            residual: Real(residuals.get(i).copied().unwrap_or(f64::NAN)),
        })
        .collect())
}
