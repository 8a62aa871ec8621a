use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use krall_core::identities::Settings;
use krall_core::matrices::SimplifiedForm;
use krall_core::scalar::{format_rational, parse_rational};
use krall_core::{FamilySpec, FamilyTag, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::cli::{Form, Format, GlobalArgs, Mode};

/// Requested degrees: one `N` or an inclusive range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NSpec {
    One(usize),
    Range(String),
}

impl NSpec {
    pub fn parse(text: &str) -> Result<(Self, Vec<usize>)> {
        let text = text.trim();
        let bound = |s: &str| -> Result<usize> {
            s.trim()
                .parse()
                .with_context(|| format!("invalid N bound {s:?} in {text:?}"))
        };
        let range = text.split_once("..=").or_else(|| text.split_once(".."));
        let (spec, ns) = match range {
            Some((lo, hi)) => {
                let (lo, hi) = (bound(lo)?, bound(hi)?);
                if lo > hi {
                    bail!("empty N range {text:?}");
                }
                (NSpec::Range(format!("{lo}..{hi}")), (lo..=hi).collect::<Vec<_>>())
            }
            None => {
                let n = bound(text)?;
                (NSpec::One(n), vec![n])
            }
        };
        Ok((spec, ns))
    }
}

impl fmt::Display for NSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSpec::One(n) => write!(f, "{n}"),
            NSpec::Range(r) => f.write_str(r),
        }
    }
}

/// Validated settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: &'static str,
    /// `all`, or the single family name.
    pub family_label: String,
    pub families: Vec<FamilySpec<Rational>>,
    /// Parameter flags as given, for the report header.
    pub params: BTreeMap<String, String>,
    pub n_spec: Option<NSpec>,
    pub ns: Vec<usize>,
    pub tolerance: f64,
    pub mode: Mode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub degree_cap: Option<usize>,
}

impl RunConfig {
    /// `default_family` is used when `--family` is absent; `None` leaves the
    /// family list empty.
    pub fn from_args(
        args: &GlobalArgs,
        command: &'static str,
        default_family: Option<&str>,
        default_mode: Mode,
        default_format: Format,
        default_n: Option<&str>,
    ) -> Result<Self> {
        if !(args.tolerance > 0.0 && args.tolerance.is_finite()) {
            bail!("--tolerance must be positive and finite, got {}", args.tolerance);
        }
        let label = args.family.as_deref().or(default_family);
        let families = match label {
            Some(label) => resolve_families(label, args)?,
            None => Vec::new(),
        };
        let mut params = BTreeMap::new();
        for (key, value) in [("alpha", &args.alpha), ("beta", &args.beta), ("M", &args.m_param)] {
            if let Some(v) = value {
                params.insert(key.to_string(), format_rational(&parse_param(key, v)?));
            }
        }
        let (n_spec, ns) = match args.n.as_deref().or(default_n) {
            Some(text) => {
                let (spec, ns) = NSpec::parse(text)?;
                (Some(spec), ns)
            }
            None => (None, Vec::new()),
        };
        // p_0 has no zeros, so only the coefficient table accepts N = 0.
        if command != "family" && ns.first() == Some(&0) {
            bail!("N must be at least 1 for {command}");
        }
        Ok(Self {
            command,
            family_label: label.unwrap_or("none").to_string(),
            families,
            params,
            n_spec,
            ns,
            tolerance: args.tolerance,
            mode: args.mode.unwrap_or(default_mode),
            format: args.format.unwrap_or(default_format),
            out: args.out.clone(),
            seed: args.seed,
            degree_cap: args.degree_cap,
        })
    }

    pub fn require_ns(&self) -> Result<&[usize]> {
        if self.ns.is_empty() {
            bail!("{} needs --n", self.command);
        }
        Ok(&self.ns)
    }

    pub fn require_family(&self) -> Result<&[FamilySpec<Rational>]> {
        if self.families.is_empty() {
            bail!("{} needs --family", self.command);
        }
        Ok(&self.families)
    }

    pub fn settings(&self, form: Form) -> Settings {
        Settings {
            tolerance: self.tolerance,
            form: match form {
                Form::FamilySpecific => SimplifiedForm::FamilySpecific,
                Form::General => SimplifiedForm::General,
            },
            degree_cap: self.degree_cap,
        }
    }

    /// Degree cap for the scalar type `T`, after the override.
    pub fn cap<T: Scalar>(&self) -> Option<usize> {
        self.degree_cap.or(T::DEFAULT_DEGREE_CAP)
    }
}

fn parse_param(key: &str, text: &str) -> Result<Rational> {
    parse_rational(text)
        .ok_or_else(|| anyhow!("invalid value {text:?} for {key}; expected an integer, p/q or a decimal"))
}

/// Family specs for `label`, with parameters from the flags. Unset Krall
/// parameters default to `alpha = 1`, `M = 1`; classical ones to zero.
fn resolve_families(label: &str, args: &GlobalArgs) -> Result<Vec<FamilySpec<Rational>>> {
    let tags: Vec<FamilyTag> = if label == "all" {
        FamilyTag::ALL.into_iter().filter(|t| t.is_krall()).collect()
    } else {
        let names: Vec<&str> = FamilyTag::ALL.iter().map(|t| t.name()).collect();
        vec![FamilyTag::from_name(label)
            .ok_or_else(|| anyhow!("unknown family {label:?}; expected one of {} or all", names.join(", ")))?]
    };
    let param = |key: &str, value: &Option<String>, default: i64| -> Result<Rational> {
        match value {
            Some(text) => parse_param(key, text),
            None => Ok(Rational::from_int(default)),
        }
    };
    let uses = |pred: fn(FamilyTag) -> bool| tags.iter().any(|&t| pred(t));
    if args.m_param.is_some() && !uses(|t| t == FamilyTag::KrallJacobi) {
        bail!("--m-param applies only to krall-jacobi");
    }
    if args.beta.is_some() && !uses(|t| t == FamilyTag::ClassicalJacobi) {
        bail!("--beta applies only to jacobi");
    }
    if args.alpha.is_some() && !uses(|t| t != FamilyTag::Hermite) {
        bail!("hermite takes no parameters");
    }
    tags.into_iter()
        .map(|tag| {
            let spec = match tag {
                FamilyTag::ClassicalJacobi => {
                    FamilySpec::jacobi(param("alpha", &args.alpha, 0)?, param("beta", &args.beta, 0)?)
                }
                FamilyTag::ClassicalLaguerre => FamilySpec::laguerre(param("alpha", &args.alpha, 0)?),
                FamilyTag::Hermite => Ok(FamilySpec::hermite()),
                FamilyTag::KrallLegendre => FamilySpec::krall_legendre(param("alpha", &args.alpha, 1)?),
                FamilyTag::KrallLaguerre => FamilySpec::krall_laguerre(param("alpha", &args.alpha, 1)?),
                FamilyTag::KrallJacobi => {
                    FamilySpec::krall_jacobi(param("alpha", &args.alpha, 1)?, param("M", &args.m_param, 1)?)
                }
            };
            spec.map_err(|e| anyhow!(e))
        })
        .collect()
}

/// `alpha=1;M=2` style label for a spec's parameters.
pub fn params_label(spec: &FamilySpec<Rational>) -> String {
    spec.params()
        .iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(";")
}
