//! Orthogonality measures reduced to their moment sequences.
//!
//! Krall measures are used exactly as stated (point masses plus a continuous
//! density). Classical measures are normalized to unit total mass, which keeps
//! every moment rational for rational parameters; orthogonality and all
//! node-level results are insensitive to that overall scale.

use crate::families::build::pochhammer;
use crate::families::spec::FamilySpec;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Absolutely continuous part of a measure.
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuousPart<T> {
    /// Constant `density` on `(-1, 1)`.
    Uniform { density: T },
    /// `e^{-x}` on `(0, inf)`.
    Exponential,
    /// `(1-x)^alpha` on `(0, 1)`.
    UnitPower { alpha: T },
    /// `(1-x)^a (1+x)^b` on `(-1, 1)`, scaled to unit mass.
    Jacobi { a: T, b: T },
    /// `x^a e^{-x}` on `(0, inf)`, scaled to unit mass.
    Laguerre { a: T },
    /// `e^{-x^2}` on the real line, scaled to unit mass.
    Gaussian,
}

/// Dirac point mass.
#[derive(Clone, Debug, PartialEq)]
pub struct Jump<T> {
    pub location: T,
    pub mass: T,
}

/// A measure `omega` known through its moments `m_k = int x^k d omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentFunctional<T> {
    spec: FamilySpec<T>,
    jumps: Vec<Jump<T>>,
    continuous: ContinuousPart<T>,
}

impl<T: Scalar> MomentFunctional<T> {
    pub fn new(spec: &FamilySpec<T>) -> Self {
        let jump = |location: i64, mass: T| Jump {
            location: T::from_int(location),
            mass,
        };
        let (jumps, continuous) = match spec {
            FamilySpec::Jacobi { a, b } => (
                Vec::new(),
                ContinuousPart::Jacobi {
                    a: a.clone(),
                    b: b.clone(),
                },
            ),
            FamilySpec::Laguerre { a } => (Vec::new(), ContinuousPart::Laguerre { a: a.clone() }),
            FamilySpec::Hermite => (Vec::new(), ContinuousPart::Gaussian),
            FamilySpec::KrallLegendre { alpha } => (
                vec![jump(-1, T::ratio(1, 2)), jump(1, T::ratio(1, 2))],
                ContinuousPart::Uniform {
                    density: alpha.clone() / T::from_int(2),
                },
            ),
            FamilySpec::KrallLaguerre { alpha } => {
                (vec![jump(0, T::one() / alpha.clone())], ContinuousPart::Exponential)
            }
            FamilySpec::KrallJacobi { alpha, mass } => (
                vec![jump(0, T::one() / mass.clone())],
                ContinuousPart::UnitPower { alpha: alpha.clone() },
            ),
        };
        Self {
            spec: spec.clone(),
            jumps,
            continuous,
        }
    }

    pub fn spec(&self) -> &FamilySpec<T> {
        &self.spec
    }

    pub fn jumps(&self) -> &[Jump<T>] {
        &self.jumps
    }

    pub fn continuous(&self) -> &ContinuousPart<T> {
        &self.continuous
    }

    /// `m_k`, summing point masses and the continuous part.
    pub fn moment(&self, k: usize) -> T {
        let from_jumps = self
            .jumps
            .iter()
            .fold(T::zero(), |acc, j| acc + j.mass.clone() * power(&j.location, k));
        from_jumps + continuous_moment(&self.continuous, k)
    }

    /// `m_0, ..., m_{count-1}`.
    pub fn moments(&self, count: usize) -> Vec<T> {
        (0..count).map(|k| self.moment(k)).collect()
    }

    /// `<p, q> = sum_{i,j} p_i q_j m_{i+j}`.
    pub fn inner_product(&self, p: &Polynomial<T>, q: &Polynomial<T>) -> T {
        let len = p.coeffs().len() + q.coeffs().len();
        let moments = self.moments(len.saturating_sub(1));
        contract(p, q, &moments)
    }

    pub fn norm_sq(&self, p: &Polynomial<T>) -> T {
        self.inner_product(p, p)
    }

    /// `int p d omega`.
    pub fn integrate(&self, p: &Polynomial<T>) -> T {
        p.coeffs()
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (k, c)| acc + c.clone() * self.moment(k))
    }

    /// Hankel matrix `[m_{i+j}]` for `0 <= i, j <= order`.
    pub fn hankel(&self, order: usize) -> Vec<Vec<T>> {
        let m = self.moments(2 * order + 1);
        (0..=order)
            .map(|i| (0..=order).map(|j| m[i + j].clone()).collect())
            .collect()
    }

    /// Positive definiteness of the Hankel matrix, by checking every pivot of an
    /// LDL^T factorization (exact in rational mode).
    pub fn hankel_positive_definite(&self, order: usize) -> bool {
        let mut h = self.hankel(order);
        let n = h.len();
        for k in 0..n {
            let pivot = h[k][k].clone();
            if pivot <= T::zero() {
                return false;
            }
            let (upper, lower) = h.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower {
                let factor = row[k].clone() / pivot.clone();
                for (entry, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                    *entry = entry.clone() - factor.clone() * p.clone();
                }
            }
        }
        true
    }
}

/// Bilinear contraction of coefficient vectors with a moment sequence.
pub(crate) fn contract<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>, moments: &[T]) -> T {
    let mut acc = T::zero();
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs().iter().enumerate() {
            acc = acc + a.clone() * b.clone() * moments[i + j].clone();
        }
    }
    acc
}

fn power<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

fn continuous_moment<T: Scalar>(part: &ContinuousPart<T>, k: usize) -> T {
    match part {
        ContinuousPart::Uniform { density } => {
            if k % 2 == 1 {
                T::zero()
            } else {
                T::from_int(2) * density.clone() / T::from_usize(k + 1)
            }
        }
        ContinuousPart::Exponential => (1..=k).fold(T::one(), |acc, i| acc * T::from_usize(i)),
        // Beta(k+1, alpha+1) = k! / (alpha+1)_{k+1}
        ContinuousPart::UnitPower { alpha } => {
            let k_fact = (1..=k).fold(T::one(), |acc, i| acc * T::from_usize(i));
            k_fact / pochhammer(&(alpha.clone() + T::one()), k + 1)
        }
        // x = 2t - 1 maps to the Beta density t^b (1-t)^a; normalized
        // moments of t are (b+1)_i / (a+b+2)_i.
        ContinuousPart::Jacobi { a, b } => {
            let ab = a.clone() + b.clone() + T::from_int(2);
            let bp = b.clone() + T::one();
            (0..=k).fold(T::zero(), |acc, i| {
                let binom = (0..i).fold(T::one(), |c, j| c * T::from_usize(k - j) / T::from_usize(j + 1));
                let sign = if (k - i).is_multiple_of(2) { T::one() } else { -T::one() };
                let two_pow = power(&T::from_int(2), i);
                acc + sign * binom * two_pow * pochhammer(&bp, i) / pochhammer(&ab, i)
            })
        }
        ContinuousPart::Laguerre { a } => pochhammer(&(a.clone() + T::one()), k),
        // (2j-1)!! / 2^j for k = 2j
        ContinuousPart::Gaussian => {
            if k % 2 == 1 {
                T::zero()
            } else {
                (1..=k / 2).fold(T::one(), |acc, i| acc * T::ratio(2 * i as i64 - 1, 2))
            }
        }
    }
}

/// `m_k` for the family's orthogonality measure.
pub fn moment<T: Scalar>(spec: &FamilySpec<T>, k: usize) -> T {
    MomentFunctional::new(spec).moment(k)
}

/// `<p, q>` under the family's orthogonality measure.
pub fn inner_product<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>, spec: &FamilySpec<T>) -> T {
    MomentFunctional::new(spec).inner_product(p, q)
}
