use crate::error::{Error, Result};
use crate::families::spec::FamilySpec;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Builds `p_0, ..., p_max_degree` under the scalar type's default degree cap.
pub fn build_family<T: Scalar>(spec: &FamilySpec<T>, max_degree: usize) -> Result<Vec<Polynomial<T>>> {
    build_family_capped(spec, max_degree, T::DEFAULT_DEGREE_CAP)
}

/// Builds `p_0, ..., p_max_degree`; `cap = None` lifts the degree limit.
pub fn build_family_capped<T: Scalar>(
    spec: &FamilySpec<T>,
    max_degree: usize,
    cap: Option<usize>,
) -> Result<Vec<Polynomial<T>>> {
    spec.validate()?;
    if let Some(cap) = cap {
        if max_degree > cap {
            return Err(Error::DegreeCapExceeded {
                requested: max_degree,
                cap,
            });
        }
    }
    Ok((0..=max_degree).map(|nu| family_polynomial(spec, nu)).collect())
}

/// The degree-`nu` member of the family from its explicit coefficient formula.
pub fn family_polynomial<T: Scalar>(spec: &FamilySpec<T>, nu: usize) -> Polynomial<T> {
    match spec {
        FamilySpec::Jacobi { a, b } => jacobi(a, b, nu),
        FamilySpec::Laguerre { a } => laguerre(a, nu),
        FamilySpec::Hermite => hermite(nu),
        FamilySpec::KrallLegendre { alpha } => krall_legendre(alpha, nu),
        FamilySpec::KrallLaguerre { alpha } => krall_laguerre(alpha, nu),
        FamilySpec::KrallJacobi { alpha, mass } => krall_jacobi(alpha, mass, nu),
    }
}

fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize(k))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub(crate) fn pochhammer<T: Scalar>(a: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, k| acc * (a.clone() + T::from_usize(k)))
}

fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * T::from_usize(n - i) / T::from_usize(i + 1))
}

fn sign<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// `P_n^(a,b)(x) = (1/n!) sum_m C(n,m) (a+b+n+1)_m (a+m+1)_{n-m} ((x-1)/2)^m`
fn jacobi<T: Scalar>(a: &T, b: &T, n: usize) -> Polynomial<T> {
    let shifted = Polynomial::new(vec![-T::ratio(1, 2), T::ratio(1, 2)]);
    let ab = a.clone() + b.clone() + T::from_usize(n + 1);
    let mut power = Polynomial::constant(T::one());
    let mut sum = Polynomial::zero();
    for m in 0..=n {
        let c = binomial::<T>(n, m) * pochhammer(&ab, m) * pochhammer(&(a.clone() + T::from_usize(m + 1)), n - m);
        sum = &sum + &power.scale(&c);
        power = &power * &shifted;
    }
    sum.scale(&(T::one() / factorial::<T>(n)))
}

/// `L_n^(a)(x) = sum_k (-1)^k (a+k+1)_{n-k} / ((n-k)! k!) x^k`
fn laguerre<T: Scalar>(a: &T, n: usize) -> Polynomial<T> {
    Polynomial::new(
        (0..=n)
            .map(|k| {
                sign::<T>(k) * pochhammer(&(a.clone() + T::from_usize(k + 1)), n - k)
                    / (factorial::<T>(n - k) * factorial::<T>(k))
            })
            .collect(),
    )
}

/// `H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!)`
fn hermite<T: Scalar>(n: usize) -> Polynomial<T> {
    let mut coeffs = vec![T::zero(); n + 1];
    for m in 0..=n / 2 {
        let p = n - 2 * m;
        let two_pow = (0..p).fold(T::one(), |acc, _| acc * T::from_int(2));
        coeffs[p] = sign::<T>(m) * factorial::<T>(n) * two_pow / (factorial::<T>(m) * factorial::<T>(p));
    }
    Polynomial::new(coeffs)
}

/// Krall-Legendre `P_nu`, orthogonal for point masses 1/2 at -1 and 1 plus density alpha/2 on (-1, 1).
fn krall_legendre<T: Scalar>(alpha: &T, nu: usize) -> Polynomial<T> {
    let mut coeffs = vec![T::zero(); nu + 1];
    let two_pow = (0..nu).fold(T::one(), |acc, _| acc * T::from_int(2));
    let shift = T::from_usize(nu * nu.saturating_sub(1) / 2);
    for k in 0..=nu / 2 {
        let bracket = alpha.clone() + shift.clone() + T::from_usize(2 * k);
        let num = sign::<T>(k) * factorial::<T>(2 * nu - 2 * k) * bracket;
        let den = two_pow.clone() * factorial::<T>(k) * factorial::<T>(nu - k) * factorial::<T>(nu - 2 * k);
        coeffs[nu - 2 * k] = num / den;
    }
    Polynomial::new(coeffs)
}

/// Krall-Laguerre `R_nu`, orthogonal for a point mass 1/alpha at 0 plus `e^{-x}` on (0, inf).
fn krall_laguerre<T: Scalar>(alpha: &T, nu: usize) -> Polynomial<T> {
    let nu_t = T::from_usize(nu);
    Polynomial::new(
        (0..=nu)
            .map(|k| {
                let k_t = T::from_usize(k);
                let bracket = k_t * (alpha.clone() + nu_t.clone() + T::one()) + alpha.clone();
                sign::<T>(k) * binomial::<T>(nu, k) * bracket / factorial::<T>(k + 1)
            })
            .collect(),
    )
}

/// Krall-Jacobi `S_nu`, orthogonal for a point mass 1/M at 0 plus `(1-x)^alpha` on (0, 1).
fn krall_jacobi<T: Scalar>(alpha: &T, mass: &T, nu: usize) -> Polynomial<T> {
    let nu_t = T::from_usize(nu);
    // (alpha+1)_{nu+k} / (alpha+1)_nu = (alpha+nu+1)_k
    let base = alpha.clone() + nu_t.clone() + T::one();
    Polynomial::new(
        (0..=nu)
            .map(|k| {
                let k_t = T::from_usize(k);
                let bracket = k_t.clone() * (nu_t.clone() + alpha.clone()) * (nu_t.clone() + T::one())
                    + (k_t + T::one()) * mass.clone();
                sign::<T>(nu - k) * binomial::<T>(nu, k) * pochhammer(&base, k) * bracket / factorial::<T>(k + 1)
            })
            .collect(),
    )
}
