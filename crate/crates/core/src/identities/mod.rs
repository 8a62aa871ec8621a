//! Checks of the algebraic relations satisfied by the zeros of `p_N`, with
//! structured residual reports.
//!
//! Every check runs in the scalar field `T`. Fields wider than `f64` use the
//! high-precision zeros from [`zeros`], which is what the tight tolerances on
//! larger `N` need; in plain `f64` the same sums lose several digits to
//! cancellation.

mod eigenpair;
mod krall4;
mod report;
mod spectrum;

pub use eigenpair::{verify_power, verify_row_sums, verify_theorem1};
pub use krall4::{verify_family_identity, verify_krall4};
pub use report::{Cell, EigenCheck, IdentityReport, IdentityTag, Variant};
pub use spectrum::spectrum_report;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::families::{build_family_capped, FamilySpec};
use crate::matrices::{collocation_rep_simplified, MatrixRep, SimplifiedForm};
use crate::polynomial::Polynomial;
use crate::rootfinding::{zeros, NodeSet};
use crate::scalar::{format_rational, Scalar};

/// Default pass threshold for scaled residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Options shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    /// Pass threshold for the maximum scaled residual.
    pub tolerance: f64,
    /// Closed form used for `D^c` at the zeros.
    pub form: SimplifiedForm,
    /// Overrides the scalar type's default degree cap.
    pub degree_cap: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            form: SimplifiedForm::FamilySpecific,
            degree_cap: None,
        }
    }
}

impl Settings {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    fn cap<T: Scalar>(&self) -> Option<usize> {
        self.degree_cap.or(T::DEFAULT_DEGREE_CAP)
    }

    fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Parameters rendered for reports: `p/q` in exact mode, decimal otherwise.
pub fn format_params<T: Scalar>(spec: &FamilySpec<T>) -> BTreeMap<String, String> {
    spec.params()
        .into_iter()
        .map(|(name, value)| {
            let text = if T::EXACT {
                format_rational(&value.to_rational())
            } else {
                format!("{}", value.to_f64_lossy())
            };
            (name.to_string(), text)
        })
        .collect()
}

/// Family members, zeros of `p_N` and `D^c` at them.
///
/// The polynomials are built exactly and rounded once to `T`, so the zeros
/// are those of the true `p_N` whatever the working precision.
pub(crate) struct Setup<T: Scalar> {
    pub polys: Vec<Polynomial<T>>,
    pub nodes: NodeSet,
    pub x: Vec<T>,
    pub dc: MatrixRep<T>,
}

impl<T: Scalar> Setup<T> {
    pub fn new(spec: &FamilySpec<T>, n: usize, settings: &Settings) -> Result<Self> {
        settings.validate()?;
        if n < 1 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        let exact_spec = spec.map(|v| v.to_rational());
        let exact = build_family_capped(&exact_spec, n, settings.cap::<T>())?;
        let nodes = zeros(&exact[n], &exact_spec)?;
        let polys: Vec<Polynomial<T>> = exact.iter().map(|p| p.map(T::from_rational)).collect();
        let dc = collocation_rep_simplified(spec, &nodes, settings.form)?;
        Ok(Self {
            x: nodes.values::<T>(),
            polys,
            nodes,
            dc,
        })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `v^(m)_k = p_m(x_k)`.
    pub fn nodal(&self, m: usize) -> Vec<T> {
        self.x.iter().map(|xk| self.polys[m].eval(xk)).collect()
    }
}

pub(crate) fn abs<T: Scalar>(v: &T) -> f64 {
    v.to_f64_lossy().abs()
}

pub(crate) fn max_abs<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(abs).fold(0.0, f64::max)
}
