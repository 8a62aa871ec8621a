//! Collocation matrices `Z^(k)` of `d^k/dx^k` on arbitrary distinct nodes.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::rep::{MatrixRep, MatrixTag};
use crate::rootfinding::NodeSet;
use crate::scalar::Scalar;

/// Highest derivative order [`diffmat`] accepts.
pub const MAX_DIFF_ORDER: usize = 4;

/// Which closed form builds the off-diagonal entries of `Z^(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffMethod {
    /// Products of node differences; `k = 1, 2` only.
    Explicit,
    /// Recursion in `k` through the node polynomial.
    Recursive,
    /// Direct sum over the node polynomial derivatives.
    Alternative,
}

impl DiffMethod {
    pub fn name(self) -> &'static str {
        match self {
            DiffMethod::Explicit => "explicit",
            DiffMethod::Recursive => "recursive",
            DiffMethod::Alternative => "alternative",
        }
    }
}

/// `Z^(k)` with the monic node polynomial.
pub fn diffmat<T: Scalar>(k: usize, nodes: &NodeSet, method: DiffMethod) -> Result<MatrixRep<T>> {
    diffmat_with_lead(k, nodes, method, &T::one())
}

/// `Z^(k)` with node polynomial `psi = lead * prod (x - x_j)`. The result does
/// not depend on `lead`.
pub fn diffmat_with_lead<T: Scalar>(k: usize, nodes: &NodeSet, method: DiffMethod, lead: &T) -> Result<MatrixRep<T>> {
    if !(1..=MAX_DIFF_ORDER).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "derivative order {k} outside 1..={MAX_DIFF_ORDER}"
        )));
    }
    if lead.is_zero() {
        return Err(Error::InvalidArgument(
            "node polynomial needs a nonzero leading coefficient".into(),
        ));
    }
    let x = nodes.values::<T>();
    let data = match method {
        DiffMethod::Explicit => match k {
            1 => explicit_first(&x),
            2 => explicit_second(&x),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "explicit formulas exist only for k = 1, 2 (got {k})"
                )))
            }
        },
        DiffMethod::Recursive => recursive(&x, k, lead).pop().expect("k >= 1"),
        DiffMethod::Alternative => alternative(&x, k, lead),
    };
    MatrixRep::new(
        MatrixTag::DiffMat(k),
        data,
        format!("Z^({k}), {} formula", method.name()),
    )
}

/// `psi^(j)(x_m)` for `j = 0..=max_order`, from the truncated Taylor product
/// `psi(x_m + t) = lead * t * prod_{k != m} (x_m - x_k + t)`.
pub(crate) fn node_poly_derivatives<T: Scalar>(x: &[T], lead: &T, max_order: usize) -> Vec<Vec<T>> {
    let n = x.len();
    (0..n)
        .map(|m| {
            let mut c = vec![T::zero(); max_order.max(1)];
            c[0] = T::one();
            for k in (0..n).filter(|&k| k != m) {
                let d = x[m].clone() - x[k].clone();
                for i in (0..c.len()).rev() {
                    let shifted = if i > 0 { c[i - 1].clone() } else { T::zero() };
                    c[i] = c[i].clone() * d.clone() + shifted;
                }
            }
            let mut out = vec![T::zero(); max_order + 1];
            let mut factorial = T::one();
            for j in 1..=max_order {
                factorial = factorial * T::from_usize(j);
                out[j] = lead.clone() * factorial.clone() * c[j - 1].clone();
            }
            out
        })
        .collect()
}

/// `Z^(0) = I, Z^(1), ..., Z^(order)` by the recursion in `k`.
pub(crate) fn recursive<T: Scalar>(x: &[T], order: usize, lead: &T) -> Vec<DMatrix<T>> {
    let n = x.len();
    let psi = node_poly_derivatives(x, lead, order + 1);
    let mut out = vec![DMatrix::<T>::identity(n, n)];
    for k in 1..=order {
        if k >= n {
            // The interpolant has degree < n.
            out.push(DMatrix::zeros(n, n));
            continue;
        }
        let prev = &out[k - 1];
        let kt = T::from_usize(k);
        let z = DMatrix::from_fn(n, n, |m, j| {
            if m == j {
                psi[j][k + 1].clone() / (T::from_usize(k + 1) * psi[j][1].clone())
            } else {
                (psi[m][k].clone() / psi[j][1].clone() - kt.clone() * prev[(m, j)].clone())
                    / (x[m].clone() - x[j].clone())
            }
        });
        out.push(z);
    }
    out
}

fn alternative<T: Scalar>(x: &[T], k: usize, lead: &T) -> DMatrix<T> {
    let n = x.len();
    if k >= n {
        return DMatrix::zeros(n, n);
    }
    let psi = node_poly_derivatives(x, lead, k + 1);
    let factorial = |j: usize| (1..=j).fold(T::one(), |acc, i| acc * T::from_usize(i));
    DMatrix::from_fn(n, n, |m, j| {
        if m == j {
            return psi[j][k + 1].clone() / (T::from_usize(k + 1) * psi[j][1].clone());
        }
        let h = x[m].clone() - x[j].clone();
        let mut sum = T::zero();
        for (i, psi_mi) in psi[m].iter().enumerate().take(k + 1).skip(1) {
            let mut term = factorial(k) / factorial(i) * psi_mi.clone();
            for _ in 0..=(k - i) {
                term = term / h.clone();
            }
            sum = if (k - i).is_multiple_of(2) {
                sum + term
            } else {
                sum - term
            };
        }
        sum / psi[j][1].clone()
    })
}

/// `pi_n = prod_{k != n} (x_n - x_k)`.
fn pi<T: Scalar>(x: &[T]) -> Vec<T> {
    (0..x.len())
        .map(|n| {
            (0..x.len())
                .filter(|&k| k != n)
                .fold(T::one(), |acc, k| acc * (x[n].clone() - x[k].clone()))
        })
        .collect()
}

fn explicit_first<T: Scalar>(x: &[T]) -> DMatrix<T> {
    let n = x.len();
    let p = pi(x);
    DMatrix::from_fn(n, n, |m, j| {
        if m == j {
            (0..n)
                .filter(|&k| k != j)
                .fold(T::zero(), |acc, k| acc + T::one() / (x[j].clone() - x[k].clone()))
        } else {
            p[m].clone() / p[j].clone() / (x[m].clone() - x[j].clone())
        }
    })
}

fn explicit_second<T: Scalar>(x: &[T]) -> DMatrix<T> {
    let n = x.len();
    let p = pi(x);
    DMatrix::from_fn(n, n, |m, j| {
        if m == j {
            let mut sum = T::zero();
            for k in (0..n).filter(|&k| k != j) {
                for q in (0..n).filter(|&q| q != j && q != k) {
                    sum = sum + T::one() / ((x[j].clone() - x[k].clone()) * (x[j].clone() - x[q].clone()));
                }
            }
            sum
        } else {
            let inner = (0..n)
                .filter(|&k| k != m && k != j)
                .fold(T::zero(), |acc, k| acc + T::one() / (x[m].clone() - x[k].clone()));
            T::from_int(2) * p[m].clone() / p[j].clone() / (x[m].clone() - x[j].clone()) * inner
        }
    })
}
