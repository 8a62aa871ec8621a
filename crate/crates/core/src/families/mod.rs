//! Orthogonal polynomial families, their measures and differential operators.

mod build;
mod moments;
mod operator;
mod spec;

pub use build::{build_family, build_family_capped, family_polynomial};
pub use moments::{inner_product, moment, ContinuousPart, Jump, MomentFunctional};
pub use operator::{apply_operator, operator_of, DiffOperator};
pub use spec::{FamilySpec, FamilyTag};

use crate::scalar::Scalar;

/// `mu_nu` for the family operator.
pub fn eigenvalue<T: Scalar>(spec: &FamilySpec<T>, nu: usize) -> T {
    spec.eigenvalue(nu)
}
