//! Orthogonal polynomial families that are eigenfunctions of differential
//! operators, their zeros, collocation and spectral matrix representations, and
//! checks of the algebraic identities the zeros satisfy.
//!
//! Everything numeric is generic over [`Scalar`]: `f32`, `f64`,
//! [`DoubleDouble`] and exact [`Rational`].

mod double;
pub mod error;
mod exact;
pub mod families;
pub mod identities;
pub mod matrices;
pub mod polynomial;
pub mod rootfinding;
pub mod scalar;

pub use double::DoubleDouble;
pub use error::{Error, Result};
pub use families::{FamilySpec, FamilyTag};
pub use matrices::MatrixRep;
pub use polynomial::Polynomial;
pub use rootfinding::NodeSet;
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num::BigRational;

pub type PolynomialF64 = Polynomial<f64>;
pub type PolynomialQ = Polynomial<Rational>;
pub type FamilySpecF64 = FamilySpec<f64>;
pub type FamilySpecQ = FamilySpec<Rational>;
pub type MatrixF64 = MatrixRep<f64>;
pub type MatrixDD = MatrixRep<DoubleDouble>;
pub type MatrixQ = MatrixRep<Rational>;
