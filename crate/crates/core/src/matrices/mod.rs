//! Matrix representations of differential operators: differentiation matrices,
//! collocation and tau representations, Christoffel numbers and the
//! transition matrices that make the two representations similar.

mod collocation;
mod diffmat;
mod eigen;
mod rep;
mod spectral;

pub use collocation::{collocation_rep, collocation_rep_simplified, nodal_values, SimplifiedForm, SINGULAR_GUARD};
pub use diffmat::{diffmat, diffmat_with_lead, DiffMethod, MAX_DIFF_ORDER};
pub use eigen::{eigenvalues, match_spectrum, EigenPair};
pub use rep::{matmul, max_relative_difference, norm_inf, MatrixRep, MatrixTag};
pub use spectral::{
    christoffel, christoffel_numbers, similarity_residual, tau_rep, transition, transition_general, INVERSION_TOL,
};
