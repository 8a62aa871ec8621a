use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which orthogonal polynomial family a [`FamilySpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    ClassicalJacobi,
    ClassicalLaguerre,
    Hermite,
    KrallLegendre,
    KrallLaguerre,
    KrallJacobi,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::ClassicalJacobi,
        FamilyTag::ClassicalLaguerre,
        FamilyTag::Hermite,
        FamilyTag::KrallLegendre,
        FamilyTag::KrallLaguerre,
        FamilyTag::KrallJacobi,
    ];

    pub fn is_krall(self) -> bool {
        matches!(
            self,
            FamilyTag::KrallLegendre | FamilyTag::KrallLaguerre | FamilyTag::KrallJacobi
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::ClassicalJacobi => "jacobi",
            FamilyTag::ClassicalLaguerre => "laguerre",
            FamilyTag::Hermite => "hermite",
            FamilyTag::KrallLegendre => "krall-legendre",
            FamilyTag::KrallLaguerre => "krall-laguerre",
            FamilyTag::KrallJacobi => "krall-jacobi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A polynomial family together with its parameters.
///
/// Classical families use the standard normalizations: Jacobi `P_n^(a,b)`,
/// generalized Laguerre `L_n^(a)` and physicists' Hermite `H_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec<T> {
    Jacobi {
        a: T,
        b: T,
    },
    Laguerre {
        a: T,
    },
    Hermite,
    KrallLegendre {
        alpha: T,
    },
    KrallLaguerre {
        alpha: T,
    },
    /// `mass` is the reciprocal of the point mass at zero.
    KrallJacobi {
        alpha: T,
        mass: T,
    },
}

impl<T: Scalar> FamilySpec<T> {
    pub fn jacobi(a: T, b: T) -> Result<Self> {
        Self::Jacobi { a, b }.validated()
    }

    pub fn laguerre(a: T) -> Result<Self> {
        Self::Laguerre { a }.validated()
    }

    pub fn hermite() -> Self {
        Self::Hermite
    }

    pub fn krall_legendre(alpha: T) -> Result<Self> {
        Self::KrallLegendre { alpha }.validated()
    }

    pub fn krall_laguerre(alpha: T) -> Result<Self> {
        Self::KrallLaguerre { alpha }.validated()
    }

    pub fn krall_jacobi(alpha: T, mass: T) -> Result<Self> {
        Self::KrallJacobi { alpha, mass }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks the parameter ranges under which the measure is positive.
    pub fn validate(&self) -> Result<()> {
        let minus_one = -T::one();
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{}: {what}", self.tag())))
            }
        };
        match self {
            Self::Jacobi { a, b } => check(*a > minus_one && *b > minus_one, "requires a > -1 and b > -1"),
            Self::Laguerre { a } => check(*a > minus_one, "requires a > -1"),
            Self::Hermite => Ok(()),
            Self::KrallLegendre { alpha } | Self::KrallLaguerre { alpha } => {
                check(*alpha > T::zero(), "requires alpha > 0")
            }
            Self::KrallJacobi { alpha, mass } => {
                check(*alpha > minus_one && *mass > T::zero(), "requires alpha > -1 and M > 0")
            }
        }
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            Self::Jacobi { .. } => FamilyTag::ClassicalJacobi,
            Self::Laguerre { .. } => FamilyTag::ClassicalLaguerre,
            Self::Hermite => FamilyTag::Hermite,
            Self::KrallLegendre { .. } => FamilyTag::KrallLegendre,
            Self::KrallLaguerre { .. } => FamilyTag::KrallLaguerre,
            Self::KrallJacobi { .. } => FamilyTag::KrallJacobi,
        }
    }

    /// Re-expresses the parameters in another scalar field.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FamilySpec<U> {
        match self {
            Self::Jacobi { a, b } => FamilySpec::Jacobi { a: f(a), b: f(b) },
            Self::Laguerre { a } => FamilySpec::Laguerre { a: f(a) },
            Self::Hermite => FamilySpec::Hermite,
            Self::KrallLegendre { alpha } => FamilySpec::KrallLegendre { alpha: f(alpha) },
            Self::KrallLaguerre { alpha } => FamilySpec::KrallLaguerre { alpha: f(alpha) },
            Self::KrallJacobi { alpha, mass } => FamilySpec::KrallJacobi {
                alpha: f(alpha),
                mass: f(mass),
            },
        }
    }

    pub fn to_f64(&self) -> FamilySpec<f64> {
        self.map(|v| v.to_f64_lossy())
    }

    /// Named parameters, for reports.
    pub fn params(&self) -> Vec<(&'static str, T)> {
        match self {
            Self::Jacobi { a, b } => vec![("a", a.clone()), ("b", b.clone())],
            Self::Laguerre { a } => vec![("a", a.clone())],
            Self::Hermite => Vec::new(),
            Self::KrallLegendre { alpha } | Self::KrallLaguerre { alpha } => {
                vec![("alpha", alpha.clone())]
            }
            Self::KrallJacobi { alpha, mass } => vec![("alpha", alpha.clone()), ("M", mass.clone())],
        }
    }

    /// Convex hull of the support of the orthogonality measure.
    pub fn hull(&self) -> (f64, f64) {
        match self {
            Self::Jacobi { .. } | Self::KrallLegendre { .. } => (-1.0, 1.0),
            Self::Laguerre { .. } | Self::KrallLaguerre { .. } => (0.0, f64::INFINITY),
            Self::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            Self::KrallJacobi { .. } => (0.0, 1.0),
        }
    }

    /// Eigenvalue `mu_nu` of the family's differential operator on `p_nu`.
    pub fn eigenvalue(&self, nu: usize) -> T {
        let n = T::from_usize(nu);
        let one = T::one();
        let two = T::from_int(2);
        match self {
            // nu [tau' + (nu - 1) sigma'' / 2]
            Self::Jacobi { a, b } => -(n.clone() * (n + a.clone() + b.clone() + one)),
            Self::Laguerre { .. } => -n,
            Self::Hermite => -(two * n),
            Self::KrallLegendre { alpha } => {
                n.clone()
                    * (one + n.clone())
                    * (T::from_int(-2) + T::from_int(4) * alpha.clone() + n.clone() + n.clone() * n)
            }
            Self::KrallLaguerre { alpha } => n.clone() * (two * alpha.clone() + one + n),
            Self::KrallJacobi { alpha, mass } => {
                n.clone()
                    * (n.clone() + alpha.clone() + one.clone())
                    * (two * mass.clone() + (n.clone() + one) * (n + alpha.clone()))
            }
        }
    }
}

impl<T: Scalar> fmt::Display for FamilySpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        let params = self.params();
        if !params.is_empty() {
            let body: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", body.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parameter_ranges() {
        assert!(FamilySpec::krall_legendre(0.0).is_err());
        assert!(FamilySpec::krall_laguerre(-1.0).is_err());
        assert!(FamilySpec::krall_jacobi(-1.0, 1.0).is_err());
        assert!(FamilySpec::krall_jacobi(-0.5, 0.0).is_err());
        assert!(FamilySpec::krall_jacobi(-0.5, 0.1).is_ok());
        assert!(FamilySpec::jacobi(-1.5, 0.0).is_err());
        assert!(FamilySpec::laguerre(-0.5).is_ok());
    }

    #[test]
    fn eigenvalues_match_closed_forms() {
        let kleg = FamilySpec::krall_legendre(Rational::from_int(1)).unwrap();
        let klag = FamilySpec::krall_laguerre(Rational::from_int(1)).unwrap();
        let kjac = FamilySpec::krall_jacobi(Rational::from_int(0), Rational::from_int(1)).unwrap();
        for spec in [&kleg, &klag, &kjac] {
            assert_eq!(spec.eigenvalue(0), Rational::from_int(0));
        }
        assert_eq!(klag.eigenvalue(2), Rational::from_int(10));
        assert_eq!(kleg.eigenvalue(1), Rational::from_int(8));
        assert_eq!(kjac.eigenvalue(1), Rational::from_int(8));
        assert_eq!(FamilySpec::<f64>::Hermite.eigenvalue(3), -6.0);
    }

    #[test]
    fn tags_round_trip_names() {
        for tag in FamilyTag::ALL {
            assert_eq!(FamilyTag::from_name(tag.name()), Some(tag));
        }
    }
}
