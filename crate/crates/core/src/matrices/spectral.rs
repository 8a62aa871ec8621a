//! Spectral (tau) representations, Christoffel numbers and the transition
//! matrices relating them to collocation representations.
//!
//! Node-dependent quantities here are computed exactly from the binary values
//! of the nodes and rounded once at the end: expanding Lagrange polynomials in
//! monomials and contracting with moments cancels catastrophically in floating
//! point.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::families::{build_family_capped, DiffOperator, FamilySpec, MomentFunctional};
use crate::matrices::rep::{matmul, norm_inf, MatrixRep, MatrixTag};
use crate::polynomial::Polynomial;
use crate::rootfinding::NodeSet;
use crate::scalar::Scalar;
use crate::{DoubleDouble, Rational};
use num::{BigInt, Integer, One, Zero};

/// Tolerance on `|L L^-1 - I|_inf` in [`transition`].
pub const INVERSION_TOL: f64 = 1e-10;

/// `A^tau_kj = <A p_{j-1}, p_{k-1}> / |p_{k-1}|^2`, `1 <= k, j <= N`.
pub fn tau_rep<T: Scalar>(op: &DiffOperator<T>, spec: &FamilySpec<T>, n: usize) -> Result<MatrixRep<T>> {
    let basis = build_family_capped(spec, n.saturating_sub(1), None)?;
    let functional = MomentFunctional::new(spec);
    let norms: Vec<T> = basis.iter().map(|p| functional.norm_sq(p)).collect();
    let images: Vec<Polynomial<T>> = basis.iter().map(|p| op.apply(p)).collect();
    let data = DMatrix::from_fn(n, n, |k, j| {
        if k > j {
            // A maps polynomials of degree j into degree <= j.
            T::zero()
        } else {
            functional.inner_product(&images[j], &basis[k]) / norms[k].clone()
        }
    });
    MatrixRep::new(MatrixTag::Tau, data, "<A p_{j-1}, p_{k-1}> / |p_{k-1}|^2 via moments")
}

/// Lagrange basis `l_j = psi(x) / (psi'(x_j) (x - x_j))` with monic `psi`.
fn lagrange_basis(x: &[Rational]) -> Vec<Polynomial<Rational>> {
    let n = x.len();
    (0..n)
        .map(|j| {
            let mut num = Polynomial::constant(Rational::from_int(1));
            let mut den = Rational::from_int(1);
            for k in (0..n).filter(|&k| k != j) {
                num = &num * &Polynomial::new(vec![-x[k].clone(), Rational::from_int(1)]);
                den *= x[j].clone() - x[k].clone();
            }
            num.scale(&(Rational::from_int(1) / den))
        })
        .collect()
}

fn exact_spec<T: Scalar>(spec: &FamilySpec<T>) -> FamilySpec<Rational> {
    spec.map(|v| v.to_rational())
}

fn christoffel_exact(nodes: &NodeSet, spec: &FamilySpec<Rational>) -> Result<Vec<Rational>> {
    let functional = MomentFunctional::new(spec);
    let moments = functional.moments(nodes.len());
    let x = nodes.values::<Rational>();
    let lambdas = match lagrange_integrals_dyadic(&x, &moments) {
        Some(l) => l,
        None => lagrange_basis(&x)
            .iter()
            .map(|l| {
                l.coeffs()
                    .iter()
                    .zip(&moments)
                    .fold(Rational::from_int(0), |acc, (c, m)| acc + c * m)
            })
            .collect(),
    };
    for (index, l) in lambdas.iter().enumerate() {
        if *l <= Rational::from_int(0) {
            return Err(Error::PositivityViolation {
                index,
                value: l.to_f64_lossy(),
            });
        }
    }
    Ok(lambdas)
}

/// `int l_j d omega` when every node is dyadic, in integer arithmetic.
///
/// With `x_k = a_k / 2^s`, `prod_{k != j} (x - x_k) = 2^{-s(N-1)} sum_i b_i 2^{si} x^i`
/// for the integer coefficients `b_i` of `prod_{k != j} (y - a_k)`, and the
/// powers of two cancel against `psi'(x_j) = 2^{-s(N-1)} prod_{k != j} (a_j - a_k)`.
fn lagrange_integrals_dyadic(x: &[Rational], moments: &[Rational]) -> Option<Vec<Rational>> {
    let shift = |d: &BigInt| (d.bits() - 1, d == &(BigInt::one() << (d.bits() - 1)));
    let mut s = 0;
    for v in x {
        let (bits, dyadic) = shift(v.denom());
        if !dyadic {
            return None;
        }
        s = s.max(bits);
    }
    let a: Vec<BigInt> = x.iter().map(|v| v.numer() << (s - (v.denom().bits() - 1))).collect();
    let weighted: Vec<Rational> = moments
        .iter()
        .enumerate()
        .map(|(i, m)| m * Rational::from_integer(BigInt::one() << (s * i as u64)))
        .collect();
    let den = weighted.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let w: Vec<BigInt> = weighted.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let n = x.len();
    Some(
        (0..n)
            .map(|j| {
                let mut b = vec![BigInt::one()];
                let mut slope = BigInt::one();
                for k in (0..n).filter(|&k| k != j) {
                    let mut next = vec![BigInt::zero(); b.len() + 1];
                    for (i, c) in b.iter().enumerate() {
                        next[i + 1] += c;
                        next[i] -= c * &a[k];
                    }
                    b = next;
                    slope *= &a[j] - &a[k];
                }
                let integral = b.iter().zip(&w).fold(BigInt::zero(), |acc, (c, wi)| acc + c * wi);
                Rational::new(integral, &den * slope)
            })
            .collect(),
    )
}

/// Christoffel numbers `lambda_j = int l_j d omega` at the nodes.
pub fn christoffel_numbers<T: Scalar>(nodes: &NodeSet, spec: &FamilySpec<T>) -> Result<Vec<T>> {
    Ok(christoffel_exact(nodes, &exact_spec(spec))?
        .iter()
        .map(T::from_rational)
        .collect())
}

/// `diag(lambda_1, ..., lambda_N)`; errors if any Christoffel number is not positive.
pub fn christoffel<T: Scalar>(nodes: &NodeSet, spec: &FamilySpec<T>) -> Result<MatrixRep<T>> {
    let lambdas = christoffel_numbers(nodes, spec)?;
    MatrixRep::new(
        MatrixTag::ChristoffelDiag,
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(lambdas)),
        "int l_j d omega via moments",
    )
}

/// `L = P Lambda` and `L^-1` for nodes that are the zeros of `p_N`.
///
/// `P_jk = p_{j-1}(x_k) / |p_{j-1}|^2`, `Lambda = diag(lambda_k)` and
/// `(L^-1)_jk = p_{k-1}(x_j)`. The product is checked against the identity.
pub fn transition<T: Scalar>(nodes: &NodeSet, spec: &FamilySpec<T>) -> Result<(MatrixRep<T>, MatrixRep<T>)> {
    let exact = exact_spec(spec);
    let n = nodes.len();
    let x = nodes.values::<Rational>();
    let basis = build_family_capped(&exact, n - 1, None)?;
    let functional = MomentFunctional::new(&exact);
    let lambdas = christoffel_exact(nodes, &exact)?;
    let values: Vec<Vec<Rational>> = basis.iter().map(|p| x.iter().map(|xk| p.eval(xk)).collect()).collect();
    let norms: Vec<Rational> = basis.iter().map(|p| functional.norm_sq(p)).collect();

    let l = DMatrix::from_fn(n, n, |j, k| {
        values[j][k].clone() / norms[j].clone() * lambdas[k].clone()
    });
    let l_inv = DMatrix::from_fn(n, n, |j, k| values[k][j].clone());
    check_inverse(&l, &l_inv)?;
    Ok((
        rep(MatrixTag::Transition, &l, "P Lambda with Christoffel numbers")?,
        rep(MatrixTag::TransitionInverse, &l_inv, "p_{k-1}(x_j)")?,
    ))
}

/// `L` from its defining inner products `L_mj = <l_j, p_{m-1}> / |p_{m-1}|^2`,
/// valid for any distinct nodes, together with `(L^-1)_jk = p_{k-1}(x_j)`.
pub fn transition_general<T: Scalar>(nodes: &NodeSet, spec: &FamilySpec<T>) -> Result<(MatrixRep<T>, MatrixRep<T>)> {
    let exact = exact_spec(spec);
    let n = nodes.len();
    let x = nodes.values::<Rational>();
    let basis = build_family_capped(&exact, n - 1, None)?;
    let functional = MomentFunctional::new(&exact);
    let lagrange = lagrange_basis(&x);
    let norms: Vec<Rational> = basis.iter().map(|p| functional.norm_sq(p)).collect();
    let l = DMatrix::from_fn(n, n, |m, j| {
        functional.inner_product(&lagrange[j], &basis[m]) / norms[m].clone()
    });
    let l_inv = DMatrix::from_fn(n, n, |j, k| basis[k].eval(&x[j]));
    check_inverse(&l, &l_inv)?;
    Ok((
        rep(MatrixTag::Transition, &l, "<l_j, p_{m-1}> / |p_{m-1}|^2")?,
        rep(MatrixTag::TransitionInverse, &l_inv, "p_{k-1}(x_j)")?,
    ))
}

/// Checked in double-double: the exact product has unwieldy denominators and
/// the tolerance is far above the rounding level.
fn check_inverse(l: &DMatrix<Rational>, l_inv: &DMatrix<Rational>) -> Result<()> {
    let n = l.nrows();
    let round = |m: &DMatrix<Rational>| m.map(|v| DoubleDouble::from_rational(&v));
    let residual = norm_inf(&(matmul(&round(l), &round(l_inv)) - DMatrix::<DoubleDouble>::identity(n, n)));
    if residual > INVERSION_TOL {
        return Err(Error::InversionInconsistent { residual });
    }
    Ok(())
}

fn rep<T: Scalar>(tag: MatrixTag, m: &DMatrix<Rational>, provenance: &str) -> Result<MatrixRep<T>> {
    MatrixRep::new(tag, m.map(|v| T::from_rational(&v)), provenance)
}

/// `|A^c L^-1 - L^-1 A^tau|_inf / max(1, |A^tau|_inf)`.
pub fn similarity_residual<T: Scalar>(
    ac: &MatrixRep<T>,
    atau: &MatrixRep<T>,
    l: &MatrixRep<T>,
    l_inv: &MatrixRep<T>,
) -> Result<f64> {
    let n = ac.dim();
    if [atau.dim(), l.dim(), l_inv.dim()].iter().any(|&d| d != n) {
        return Err(Error::DimensionMismatch(format!(
            "similarity needs conformable matrices, got {n}, {}, {}, {}",
            atau.dim(),
            l.dim(),
            l_inv.dim()
        )));
    }
    let lhs = matmul(ac.data(), l_inv.data());
    let rhs = matmul(l_inv.data(), atau.data());
    let diff = DMatrix::from_fn(n, n, |i, j| lhs[(i, j)].clone() - rhs[(i, j)].clone());
    Ok(norm_inf(&diff) / atau.norm_inf().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, operator_of};
    use crate::matrices::collocation::collocation_rep;
    use crate::rootfinding::zeros;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    #[test]
    fn dyadic_lagrange_integrals_match_the_expansion() {
        let x: Vec<Rational> = [-0.75, -0.125, 0.3, 0.9]
            .iter()
            .map(|&v| Rational::from_f64_exact(v))
            .collect();
        let moments: Vec<Rational> = (0..4).map(|k| q(1, k + 1)).collect();
        let fast = lagrange_integrals_dyadic(&x, &moments).unwrap();
        let slow: Vec<Rational> = lagrange_basis(&x)
            .iter()
            .map(|l| l.coeffs().iter().zip(&moments).fold(q(0, 1), |acc, (c, m)| acc + c * m))
            .collect();
        assert_eq!(fast, slow);
        assert!(lagrange_integrals_dyadic(&[q(1, 3)], &moments).is_none());
    }

    #[test]
    fn tau_of_family_operator_is_the_eigenvalue_diagonal() {
        let spec = FamilySpec::krall_laguerre(q(1, 1)).unwrap();
        let t = tau_rep(&operator_of(&spec), &spec, 3).unwrap();
        let expected = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![q(0, 1), q(4, 1), q(10, 1)]));
        assert_eq!(*t.data(), expected);
        let zero = tau_rep(&DiffOperator::zero(), &spec, 3).unwrap();
        assert!(zero.data().iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn tau_is_upper_triangular_for_any_admissible_operator() {
        let spec = FamilySpec::krall_jacobi(q(1, 1), q(2, 1)).unwrap();
        let op = DiffOperator::new([
            (1, Polynomial::from_ints(&[2, -3])),
            (2, Polynomial::from_ints(&[1, 0, 5])),
            (0, Polynomial::from_ints(&[7])),
        ])
        .unwrap();
        let t = tau_rep(&op, &spec, 5).unwrap();
        let full = DMatrix::from_fn(5, 5, |k, j| {
            let basis = build_family(&spec, 4).unwrap();
            let f = MomentFunctional::new(&spec);
            f.inner_product(&op.apply(&basis[j]), &basis[k]) / f.norm_sq(&basis[k])
        });
        assert_eq!(*t.data(), full);
    }

    #[test]
    fn christoffel_single_node_is_total_mass() {
        let spec = FamilySpec::krall_legendre(q(3, 2)).unwrap();
        let ns = zeros(&build_family(&spec, 1).unwrap()[1], &spec).unwrap();
        assert_eq!(christoffel_numbers(&ns, &spec).unwrap(), vec![q(5, 2)]);
    }

    #[test]
    fn christoffel_rejects_nonpositive_weights() {
        // Nodes far outside the support give a negative weight.
        let spec = FamilySpec::krall_laguerre(q(1, 1)).unwrap();
        let ns = NodeSet::from_points(vec![0.5, 40.0, 41.0]).unwrap();
        assert!(matches!(
            christoffel(&ns, &spec),
            Err(Error::PositivityViolation { .. })
        ));
    }

    #[test]
    fn transition_and_similarity() {
        let spec = FamilySpec::krall_jacobi(1.0, 2.0).unwrap();
        for n in 1..=5 {
            let ns = zeros(&build_family(&spec, n).unwrap()[n], &spec).unwrap();
            let (l, l_inv) = transition::<f64>(&ns, &spec).unwrap();
            let dc = collocation_rep(&operator_of(&spec), &ns);
            let dt = tau_rep(&operator_of(&spec), &spec, n).unwrap();
            assert!(similarity_residual(&dc, &dt, &l, &l_inv).unwrap() < 1e-8);
        }
        let exact = FamilySpec::krall_jacobi(q(1, 1), q(2, 1)).unwrap();
        let ns = zeros(&build_family(&exact, 6).unwrap()[6], &exact).unwrap();
        let (l, l_inv) = transition::<Rational>(&ns, &exact).unwrap();
        let dc = collocation_rep(&operator_of(&exact), &ns);
        let dt = tau_rep(&operator_of(&exact), &exact, 6).unwrap();
        assert_eq!(similarity_residual(&dc, &dt, &l, &l_inv).unwrap(), 0.0);
    }

    #[test]
    fn general_transition_on_arbitrary_nodes() {
        let spec = FamilySpec::krall_legendre(q(1, 1)).unwrap();
        let ns = NodeSet::from_points(vec![-0.8, -0.1, 0.3, 0.7]).unwrap();
        let (l, l_inv) = transition_general::<Rational>(&ns, &spec).unwrap();
        assert_eq!(l.data() * l_inv.data(), DMatrix::identity(4, 4));
        let dc = collocation_rep(&operator_of(&spec), &ns);
        let dt = tau_rep(&operator_of(&spec), &spec, 4).unwrap();
        assert_eq!(similarity_residual(&dc, &dt, &l, &l_inv).unwrap(), 0.0);
        // The Gaussian shortcut does not apply off the zeros.
        assert!(transition(&ns, &spec).is_err());
    }
}
