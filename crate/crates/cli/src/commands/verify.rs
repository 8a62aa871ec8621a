use std::collections::BTreeMap;

use anyhow::{bail, Result};
use clap::ValueEnum;
use krall_core::identities::{
    spectrum_report, verify_family_identity, verify_krall4, verify_power, verify_row_sums, verify_theorem1,
    IdentityReport, Variant,
};
use krall_core::{FamilySpec, FamilyTag, NodeSet, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{exact_family_and_zeros, meta, with_scalar};
use crate::cli::{Form, NodeChoice, Suite, VariantArg, VerifyArgs};
use crate::config::{params_label, RunConfig};
use crate::output::{CheckRow, Document, Real, ResultRow};

/// Options that shape individual checks.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub variant: VariantArg,
    pub exponent: u32,
    pub nodes: Option<Vec<f64>>,
    pub node_set: NodeChoice,
    pub form: Form,
}

impl From<&VerifyArgs> for CheckOptions {
    fn from(args: &VerifyArgs) -> Self {
        Self {
            variant: args.variant,
            exponent: args.exponent,
            nodes: args.nodes.clone(),
            node_set: args.node_set,
            form: args.form,
        }
    }
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            variant: VariantArg::Both,
            exponent: 2,
            nodes: None,
            node_set: NodeChoice::Equispaced,
            form: Form::FamilySpecific,
        }
    }
}

/// One check on one family at one `N`.
#[derive(Clone, Debug)]
struct Job {
    suite: Suite,
    spec: FamilySpec<Rational>,
    n: usize,
}

fn main_family(suite: Suite) -> Option<FamilyTag> {
    match suite {
        Suite::KlegMain => Some(FamilyTag::KrallLegendre),
        Suite::KlagMain => Some(FamilyTag::KrallLaguerre),
        Suite::KjacMain => Some(FamilyTag::KrallJacobi),
        _ => None,
    }
}

fn applies(suite: Suite, tag: FamilyTag) -> bool {
    match suite {
        Suite::Krall4 => tag.is_krall(),
        _ => main_family(suite).is_none_or(|t| t == tag),
    }
}

pub fn run(cfg: &RunConfig, args: &VerifyArgs) -> Result<Document> {
    let suite = args.suite;
    if args.nodes.is_some() && suite != Suite::Spectrum {
        bail!("--nodes applies only to the spectrum suite");
    }
    let families: Vec<&FamilySpec<Rational>> = cfg.families.iter().filter(|s| applies(suite, s.tag())).collect();
    if families.is_empty() {
        let wanted = match main_family(suite) {
            Some(tag) => tag.name().to_string(),
            None => "a Krall family".into(),
        };
        let name = suite.to_possible_value().expect("no skipped suites");
        bail!(
            "suite {} needs {wanted}, but --family is {}",
            name.get_name(),
            cfg.family_label
        );
    }
    let jobs = cfg
        .ns
        .iter()
        .flat_map(|&n| {
            families.iter().map(move |spec| Job {
                suite,
                spec: (*spec).clone(),
                n,
            })
        })
        .collect();
    execute(cfg, jobs, &CheckOptions::from(args))
}

/// Every suite that applies to each family, with both variants of the
/// family-specific identities.
pub fn run_all(cfg: &RunConfig) -> Result<Document> {
    let suites = [
        Suite::Thm1,
        Suite::Rowsum,
        Suite::Power,
        Suite::Krall4,
        Suite::KlegMain,
        Suite::KlagMain,
        Suite::KjacMain,
        Suite::Spectrum,
    ];
    let mut jobs = Vec::new();
    for spec in &cfg.families {
        for &n in &cfg.ns {
            for suite in suites {
                if applies(suite, spec.tag()) {
                    jobs.push(Job {
                        suite,
                        spec: spec.clone(),
                        n,
                    });
                }
            }
        }
    }
    execute(cfg, jobs, &CheckOptions::default())
}

fn execute(cfg: &RunConfig, jobs: Vec<Job>, opts: &CheckOptions) -> Result<Document> {
    let reports: Vec<Vec<(Job, IdentityReport)>> = jobs
        .into_par_iter()
        .map(|job| {
            let reports = with_scalar!(cfg.mode, run_job(&job, cfg, opts))?;
            Ok(reports.into_iter().map(|r| (job.clone(), r)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(assemble(
        cfg,
        reports.into_iter().flatten().collect(),
        opts.variant == VariantArg::Both,
    ))
}

fn run_job<T: Scalar>(job: &Job, cfg: &RunConfig, opts: &CheckOptions) -> Result<Vec<IdentityReport>> {
    let spec = job.spec.map(T::from_rational);
    let settings = cfg.settings(opts.form);
    let n = job.n;
    let report = match job.suite {
        Suite::Thm1 => verify_theorem1(&spec, n, &settings)?,
        Suite::Rowsum => verify_row_sums(&spec, n, &settings)?,
        Suite::Power => verify_power(&spec, n, opts.exponent, &settings)?,
        Suite::Krall4 => verify_krall4(&spec, n, &settings)?,
        Suite::KlegMain | Suite::KlagMain | Suite::KjacMain => {
            let variants: &[Variant] = match opts.variant {
                VariantArg::Printed => &[Variant::Printed],
                VariantArg::Corrected => &[Variant::Corrected],
                VariantArg::Both => &[Variant::Printed, Variant::Corrected],
            };
            return variants
                .iter()
                .map(|&v| Ok(verify_family_identity(&spec, n, v, &settings)?))
                .collect();
        }
        Suite::Spectrum => spectrum_report(&spec, n, &spectrum_nodes::<T>(job, cfg, opts)?, &settings)?,
    };
    Ok(vec![report])
}

/// Nodes for the spectrum check. Equispaced and random nodes lie inside the
/// support hull, or inside the span of the zeros when the hull is unbounded.
fn spectrum_nodes<T: Scalar>(job: &Job, cfg: &RunConfig, opts: &CheckOptions) -> Result<NodeSet> {
    if let Some(points) = &opts.nodes {
        return Ok(NodeSet::from_points(points.clone())?);
    }
    let n = job.n;
    if opts.node_set == NodeChoice::Zeros {
        return Ok(exact_family_and_zeros::<T>(&job.spec, n, cfg)?.1);
    }
    let (lo, hi) = job.spec.to_f64().hull();
    let (lo, hi) = if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        let (_, z) = exact_family_and_zeros::<T>(&job.spec, n.max(2), cfg)?;
        (z.points()[0], z.points()[z.len() - 1])
    };
    if opts.node_set == NodeChoice::Equispaced {
        return Ok(NodeSet::equispaced(lo, hi, n)?);
    }
    // One generator per N, so the draw does not depend on scheduling.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let h = (hi - lo) / (n as f64 + 1.0);
    let points = (1..=n)
        .map(|j| lo + h * (j as f64 + rng.random_range(-0.3..0.3)))
        .collect();
    Ok(NodeSet::from_points(points)?)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn assemble(cfg: &RunConfig, reports: Vec<(Job, IdentityReport)>, both_variants: bool) -> Document {
    let mut doc = Document::new(meta(cfg));
    // Family-specific identities run with both variants pass when one
    // variant passes every N for that family.
    let mut variant_verdicts: BTreeMap<(String, String), BTreeMap<String, bool>> = BTreeMap::new();
    let mut pass = true;
    for (job, report) in &reports {
        let family = report.family.to_string();
        let params = params_label(&job.spec);
        let variant = report.variant.map(|v| v.name().to_string());
        for c in &report.cells {
            doc.results.push(ResultRow {
                identity: report.identity.to_string(),
                variant: variant.clone(),
                family: family.clone(),
                params: params.clone(),
                big_n: report.n,
                m: c.m,
                n: c.n,
                residual: Real(c.residual),
                pass: c.pass,
            });
        }
        doc.checks.push(CheckRow {
            identity: report.identity.to_string(),
            variant: variant.clone(),
            family: family.clone(),
            params: params.clone(),
            big_n: report.n,
            max_residual: Real(report.max_residual),
            cross_check: report.cross_check.map(Real),
            skipped: report.skipped.clone(),
            notes: report.notes.clone(),
            pass: report.pass,
        });
        if both_variants && main_family(job.suite).is_some() {
            let entry = variant_verdicts
                .entry((family, params))
                .or_default()
                .entry(variant.unwrap_or_default())
                .or_insert(true);
            *entry &= report.pass;
        } else {
            pass &= report.pass;
        }
    }
    if !variant_verdicts.is_empty() {
        let mut names = Vec::new();
        for ((family, params), verdicts) in &variant_verdicts {
            let passing: Vec<&str> = verdicts.iter().filter(|(_, &ok)| ok).map(|(v, _)| v.as_str()).collect();
            pass &= !passing.is_empty();
            names.extend(passing.iter().map(|v| format!("{family}({params}): {v}")));
        }
        doc.summary.passing_variants = Some(names);
    }
    let max = doc.results.iter().map(|r| r.residual.0).fold(0.0, nan_max);
    doc.summary.max_residual = Some(Real(max));
    doc.summary.pass = pass;
    if !pass {
        doc.summary.worst = doc
            .results
            .iter()
            .filter(|r| !r.pass)
            .fold(None, |best: Option<&ResultRow>, r| match best {
                Some(b) if b.residual.0.is_nan() || r.residual.0 <= b.residual.0 => Some(b),
                _ => Some(r),
            })
            .cloned();
    }
    doc
}
