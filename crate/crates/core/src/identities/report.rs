use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::families::{FamilySpec, FamilyTag};
use crate::identities::{format_params, Settings};
use crate::matrices::EigenPair;
use crate::scalar::Scalar;

/// Which relation a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityTag {
    /// `sum_k D^c_nk p_m(x_k) = mu_m p_m(x_n)`.
    Thm1Eq1xn,
    /// Row sums of `D^c` equal `mu_0`.
    Thm1Eq1xnm0,
    /// The eigenpair relation for a power of `D^c`.
    Remark2Power(u32),
    /// The fourth-order identity written with `a_j` and `p_N` derivatives.
    Thm3Krall4,
    KlegMain,
    KlagMain,
    KjacMain,
    /// Eigenvalues of `D^c` against `mu_0, ..., mu_{N-1}`.
    Spectrum,
}

impl IdentityTag {
    /// The family-specific identity for a Krall family.
    pub fn family_main(tag: FamilyTag) -> Option<Self> {
        match tag {
            FamilyTag::KrallLegendre => Some(Self::KlegMain),
            FamilyTag::KrallLaguerre => Some(Self::KlagMain),
            FamilyTag::KrallJacobi => Some(Self::KjacMain),
            _ => None,
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Thm1Eq1xn => f.write_str("thm1_eq1xn"),
            Self::Thm1Eq1xnm0 => f.write_str("thm1_eq1xnm0"),
            Self::Remark2Power(e) => write!(f, "remark2_power({e})"),
            Self::Thm3Krall4 => f.write_str("thm3_krall4"),
            Self::KlegMain => f.write_str("kleg_main"),
            Self::KlagMain => f.write_str("klag_main"),
            Self::KjacMain => f.write_str("kjac_main"),
            Self::Spectrum => f.write_str("spectrum"),
        }
    }
}

/// Printed form of a family identity, or the form with the doubtful
/// trailing factor repaired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Printed,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Self::Printed => "printed",
            Self::Corrected => "corrected",
        }
    }
}

/// One scaled residual. `m` is the polynomial index, `n` the 1-based node
/// index (absent for node-independent quantities such as eigenvalues).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub m: usize,
    pub n: Option<usize>,
    pub residual: f64,
    pub pass: bool,
}

/// `(mu_m, worst residual over the nodes)` for one eigenpair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCheck {
    pub m: usize,
    pub mu: f64,
    pub residual: f64,
}

/// Outcome of one check on one `(family, N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub family: FamilyTag,
    pub params: BTreeMap<String, String>,
    #[serde(rename = "N")]
    pub n: usize,
    pub scalar: String,
    pub tolerance: f64,
    pub cells: Vec<Cell>,
    pub max_residual: f64,
    #[serde(default)]
    pub eigenpairs: Vec<EigenCheck>,
    #[serde(default)]
    pub spectrum: Vec<EigenPair>,
    /// Worst deviation of an auxiliary consistency check, when one applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<f64>,
    /// 1-based nodes where the check was skipped.
    #[serde(default)]
    pub skipped: Vec<usize>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl IdentityReport {
    pub(crate) fn new<T: Scalar>(identity: IdentityTag, spec: &FamilySpec<T>, n: usize, settings: &Settings) -> Self {
        Self {
            identity,
            variant: None,
            family: spec.tag(),
            params: format_params(spec),
            n,
            scalar: T::NAME.to_string(),
            tolerance: settings.tolerance,
            cells: Vec::new(),
            max_residual: 0.0,
            eigenpairs: Vec::new(),
            spectrum: Vec::new(),
            cross_check: None,
            skipped: Vec::new(),
            notes: Vec::new(),
            pass: true,
        }
    }

    pub(crate) fn push(&mut self, m: usize, n: Option<usize>, residual: f64) {
        // NaN must fail, so compare in the passing direction.
        let pass = residual <= self.tolerance;
        self.cells.push(Cell { m, n, residual, pass });
    }

    /// Computes `max_residual`, the per-`m` worst residuals and `pass`.
    pub(crate) fn finish(mut self, mu: impl Fn(usize) -> f64) -> Self {
        self.max_residual = self.cells.iter().map(|c| c.residual).fold(0.0, nan_max);
        let mut per_m: BTreeMap<usize, f64> = BTreeMap::new();
        for c in &self.cells {
            let worst = per_m.entry(c.m).or_insert(0.0);
            *worst = nan_max(*worst, c.residual);
        }
        self.eigenpairs = per_m
            .into_iter()
            .map(|(m, residual)| EigenCheck { m, mu: mu(m), residual })
            .collect();
        self.pass = self.cells.iter().all(|c| c.pass) && self.cross_check.is_none_or(|c| c <= self.tolerance);
        self
    }

    /// The cell with the largest residual.
    pub fn worst(&self) -> Option<&Cell> {
        self.cells.iter().fold(None, |best: Option<&Cell>, c| match best {
            Some(b) if b.residual.is_nan() || c.residual <= b.residual => Some(b),
            _ => Some(c),
        })
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
