use crate::error::{Error, Result};
use crate::families::spec::FamilySpec;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Linear differential operator `sum_j a_j(x) d^j/dx^j` with polynomial coefficients.
///
/// Every coefficient satisfies `deg a_j <= j`, so the operator maps polynomials of
/// degree at most `nu` into polynomials of degree at most `nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<T> {
    /// `(order, a_order)`, ascending by order, without zero coefficients.
    terms: Vec<(usize, Polynomial<T>)>,
}

impl<T: Scalar> DiffOperator<T> {
    /// Combines repeated orders and rejects coefficients with `deg a_j > j`.
    pub fn new(terms: impl IntoIterator<Item = (usize, Polynomial<T>)>) -> Result<Self> {
        let mut merged: Vec<(usize, Polynomial<T>)> = Vec::new();
        for (order, coeff) in terms {
            match merged.iter_mut().find(|(o, _)| *o == order) {
                Some((_, existing)) => *existing = &*existing + &coeff,
                None => merged.push((order, coeff)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by_key(|(o, _)| *o);
        for (order, coeff) in &merged {
            if coeff.degree().is_some_and(|d| d > *order) {
                return Err(Error::InvalidArgument(format!(
                    "coefficient of d^{order}/dx^{order} has degree {:?} > {order}",
                    coeff.degree()
                )));
            }
        }
        Ok(Self { terms: merged })
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self {
            terms: vec![(0, Polynomial::constant(T::one()))],
        }
    }

    /// `d^k/dx^k`.
    pub fn derivative(k: usize) -> Self {
        Self {
            terms: vec![(k, Polynomial::constant(T::one()))],
        }
    }

    pub fn terms(&self) -> &[(usize, Polynomial<T>)] {
        &self.terms
    }

    /// `a_j`, zero when the operator has no term of that order.
    pub fn coefficient(&self, order: usize) -> Polynomial<T> {
        self.terms
            .iter()
            .find(|(o, _)| *o == order)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Polynomial::zero)
    }

    pub fn order(&self) -> usize {
        self.terms.last().map_or(0, |(o, _)| *o)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_j a_j p^{(j)}` by exact coefficient arithmetic.
    pub fn apply(&self, p: &Polynomial<T>) -> Polynomial<T> {
        self.terms.iter().fold(Polynomial::zero(), |acc, (order, coeff)| {
            &acc + &(coeff * &p.nth_derivative(*order))
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DiffOperator<U> {
        DiffOperator {
            terms: self.terms.iter().map(|(o, c)| (*o, c.map(&f))).collect(),
        }
    }

    pub fn to_f64(&self) -> DiffOperator<f64> {
        self.map(|c| c.to_f64_lossy())
    }
}

/// The operator that has the family as eigenfunctions, in expanded form.
pub fn operator_of<T: Scalar>(spec: &FamilySpec<T>) -> DiffOperator<T> {
    let int = |v: i64| T::from_int(v);
    let poly = |c: Vec<T>| Polynomial::new(c);
    let terms: Vec<(usize, Polynomial<T>)> = match spec {
        // sigma = 1 - x^2, tau = b - a - (a + b + 2) x
        FamilySpec::Jacobi { a, b } => vec![
            (2, poly(vec![int(1), int(0), int(-1)])),
            (1, poly(vec![b.clone() - a.clone(), -(a.clone() + b.clone() + int(2))])),
        ],
        // sigma = x, tau = a + 1 - x
        FamilySpec::Laguerre { a } => vec![
            (2, poly(vec![int(0), int(1)])),
            (1, poly(vec![a.clone() + int(1), int(-1)])),
        ],
        // sigma = 1, tau = -2x
        FamilySpec::Hermite => vec![(2, poly(vec![int(1)])), (1, poly(vec![int(0), int(-2)]))],
        FamilySpec::KrallLegendre { alpha } => vec![
            (4, poly(vec![int(1), int(0), int(-2), int(0), int(1)])),
            (3, poly(vec![int(0), int(-8), int(0), int(8)])),
            (2, {
                let c = int(4) * (int(3) + alpha.clone());
                poly(vec![-c.clone(), int(0), c])
            }),
            (1, poly(vec![int(0), int(8) * alpha.clone()])),
        ],
        FamilySpec::KrallLaguerre { alpha } => vec![
            (4, poly(vec![int(0), int(0), int(1)])),
            (3, poly(vec![int(0), int(4), int(-2)])),
            (2, poly(vec![int(0), int(-2) * (alpha.clone() + int(3)), int(1)])),
            (
                1,
                poly(vec![int(-2) * alpha.clone(), int(2) * (alpha.clone() + int(1))]),
            ),
        ],
        FamilySpec::KrallJacobi { alpha, mass } => {
            let a = alpha.clone();
            let m = mass.clone();
            vec![
                (4, poly(vec![int(0), int(0), int(1), int(-2), int(1)])),
                // 2x(x-1)[(a+4)x - 2]
                (
                    3,
                    poly(vec![
                        int(0),
                        int(4),
                        -(int(2) * a.clone() + int(12)),
                        int(2) * (a.clone() + int(4)),
                    ]),
                ),
                (
                    2,
                    poly(vec![
                        int(0),
                        int(-2) * (int(3) * a.clone() + m.clone() + int(6)),
                        a.clone() * a.clone() + int(9) * a.clone() + int(2) * m.clone() + int(14),
                    ]),
                ),
                (
                    1,
                    poly(vec![
                        int(-2) * m.clone(),
                        int(2) * (a.clone() + int(2)) * (a + m + int(1)),
                    ]),
                ),
            ]
        }
    };
    DiffOperator::new(terms).expect("family operators satisfy the degree condition")
}

/// `D p` for the family operator.
pub fn apply_operator<T: Scalar>(op: &DiffOperator<T>, p: &Polynomial<T>) -> Polynomial<T> {
    op.apply(p)
}
