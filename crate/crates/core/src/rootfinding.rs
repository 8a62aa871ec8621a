//! Real zeros of orthogonal polynomials and the derivative values the
//! collocation formulas need at them.

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::exact::{round_significant, ExactPoly};
use crate::families::{FamilySpec, FamilyTag};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;
use crate::Rational;

/// Residual bound `|p(x_n)| <= RESIDUAL_TOL * sum_k |c_k| |x_n|^k` after polishing.
pub const RESIDUAL_TOL: f64 = 1e-14;
/// Largest acceptable imaginary part of a root after complex polishing.
pub const IMAG_TOL: f64 = 1e-8;
/// Smallest acceptable separation between neighbouring roots.
pub const SIMPLE_TOL: f64 = 1e-10;
/// Zeros are also refined to this many fractional bits for exact-mode work.
pub const REFINED_BITS: u64 = 192;

const MAX_NEWTON: usize = 100;

/// `p_N'`, `p_N''`, `p_N'''` evaluated at each node.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeDerivatives {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    pub third: Vec<f64>,
}

/// Distinct real interpolation nodes in ascending order.
///
/// Node sets produced by [`zeros`] also carry the derivative values of the
/// polynomial whose zeros they are, and the residuals `|p_N(x_n)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    points: Vec<f64>,
    derivatives: Option<NodeDerivatives>,
    residuals: Option<Vec<f64>>,
    family: Option<FamilyTag>,
    refined: Option<Refined>,
}

/// High-precision dyadic approximations of the zeros and of `p_N'`, `p_N''`,
/// `p_N'''` there.
#[derive(Clone, Debug, PartialEq)]
struct Refined {
    points: Vec<Rational>,
    derivatives: [Vec<Rational>; 3],
}

impl NodeSet {
    /// Arbitrary distinct real nodes; they are sorted ascending.
    pub fn from_points(mut points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("node set must not be empty".into()));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("nodes must be finite".into()));
        }
        points.sort_by(f64::total_cmp);
        check_simple(&points)?;
        Ok(Self {
            points,
            derivatives: None,
            residuals: None,
            family: None,
            refined: None,
        })
    }

    /// `count` equally spaced interior points of `[lo, hi]`.
    pub fn equispaced(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let h = (hi - lo) / (count as f64 + 1.0);
        Self::from_points((1..=count).map(|i| lo + h * i as f64).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The nodes in the scalar field `T`. Fields finer than `f64` get the
    /// refined zeros when the node set came from [`zeros`], and the exact
    /// binary values of the points otherwise.
    pub fn values<T: Scalar>(&self) -> Vec<T> {
        match &self.refined {
            Some(r) if T::beyond_f64() => r.points.iter().map(T::from_rational).collect(),
            _ => self.points.iter().map(|&x| T::from_f64_exact(x)).collect(),
        }
    }

    /// `[p_N', p_N'', p_N''']` at the nodes in the scalar field `T`, matching
    /// the node values returned by [`NodeSet::values`].
    pub fn derivative_values<T: Scalar>(&self) -> Result<[Vec<T>; 3]> {
        if let Some(r) = self.refined.as_ref().filter(|_| T::beyond_f64()) {
            return Ok(r.derivatives.clone().map(|v| v.iter().map(T::from_rational).collect()));
        }
        let d = self.require_derivatives()?;
        let conv = |v: &[f64]| v.iter().map(|&x| T::from_f64_exact(x)).collect::<Vec<T>>();
        Ok([conv(&d.first), conv(&d.second), conv(&d.third)])
    }

    /// Whether high-precision zeros are available for exact-mode work.
    pub fn is_refined(&self) -> bool {
        self.refined.is_some()
    }

    pub fn derivatives(&self) -> Option<&NodeDerivatives> {
        self.derivatives.as_ref()
    }

    pub fn residuals(&self) -> Option<&[f64]> {
        self.residuals.as_deref()
    }

    pub fn family(&self) -> Option<FamilyTag> {
        self.family
    }

    pub(crate) fn require_derivatives(&self) -> Result<&NodeDerivatives> {
        self.derivatives.as_ref().ok_or(Error::MissingDerivatives)
    }
}

/// The `N = deg p` real zeros of `p`, polished and annotated with `p'`, `p''`, `p'''`.
///
/// Starting values come from the eigenvalues of the balanced companion
/// matrix. They are refined by simultaneous Aberth iteration and a final
/// Newton pass, both evaluating `p` exactly at the current double iterate, so
/// the accuracy is limited by the conditioning of the roots and not by the
/// rounding of the coefficients.
pub fn zeros<T: Scalar>(p: &Polynomial<T>, spec: &FamilySpec<T>) -> Result<NodeSet> {
    let degree = p.degree().filter(|&d| d >= 1).ok_or(Error::DegreeTooLow(p.degree()))?;
    let exact = p.to_rational();
    let derivs: Vec<ExactPoly> = (0..=3).map(|k| ExactPoly::new(&exact.nth_derivative(k))).collect();

    let mut roots = if degree == 1 {
        let r = -(exact.coeff(0) / exact.coeff(1));
        vec![Complex64::new(r.to_f64_lossy(), 0.0)]
    } else {
        companion_eigenvalues(&p.to_f64())
    };
    aberth(&derivs[0], &derivs[1], &mut roots);

    let mut points = Vec::with_capacity(degree);
    for (index, z) in roots.iter().enumerate() {
        if !z.is_finite() || z.im.abs() > IMAG_TOL * z.norm().max(1.0) {
            return Err(Error::NonRealRoot { index, imag: z.im });
        }
        points.push(polish_real(&derivs[0], &derivs[1], z.re));
    }
    points.sort_by(f64::total_cmp);
    check_simple(&points)?;

    let grid = BigInt::one() << REFINED_BITS;
    let refined_points: Vec<Rational> = points
        .iter()
        .map(|&x| Rational::new(derivs[0].refine(&derivs[1], x, REFINED_BITS), grid.clone()))
        .collect();
    for (x, r) in points.iter_mut().zip(&refined_points) {
        *x = r.to_f64_lossy();
    }
    check_simple(&points)?;
    let refined_derivatives = [1, 2, 3].map(|k| {
        refined_points
            .iter()
            .map(|r| {
                let numer = r * Rational::from_integer(grid.clone());
                round_significant(&derivs[k].eval_dyadic(numer.numer(), REFINED_BITS), REFINED_BITS)
            })
            .collect::<Vec<_>>()
    });

    let (lo, hi) = spec.hull();
    for &x in &points {
        let slack = 1e-12 * x.abs().max(1.0);
        if x < lo - slack || x > hi + slack {
            return Err(Error::OutsideHull { x, lo, hi });
        }
    }

    let mut residuals = Vec::with_capacity(degree);
    for &x in &points {
        let residual = derivs[0].eval(x).abs();
        let scale = derivs[0].abs_scale(x);
        if residual > RESIDUAL_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NotConverged { x, residual });
        }
        residuals.push(residual);
    }

    let values = |d: &ExactPoly| points.iter().map(|&x| d.eval(x)).collect::<Vec<_>>();
    let derivatives = NodeDerivatives {
        first: values(&derivs[1]),
        second: values(&derivs[2]),
        third: values(&derivs[3]),
    };

    Ok(NodeSet {
        points,
        derivatives: Some(derivatives),
        residuals: Some(residuals),
        family: Some(spec.tag()),
        refined: Some(Refined {
            points: refined_points,
            derivatives: refined_derivatives,
        }),
    })
}

/// Simultaneous Aberth iteration in the complex plane. Each Newton correction
/// is deflated by the other iterates, so two starts cannot settle on one root.
fn aberth(p: &ExactPoly, dp: &ExactPoly, roots: &mut [Complex64]) {
    let mut done = vec![false; roots.len()];
    for _ in 0..MAX_NEWTON {
        for i in 0..roots.len() {
            if done[i] {
                continue;
            }
            let z = roots[i];
            let value = p.eval_complex(z);
            if value.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let slope = dp.eval_complex(z);
            if slope.norm() == 0.0 {
                continue;
            }
            let newton = value.div(slope);
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, w)| j != i && *w != z)
                .map(|(_, w)| 1.0 / (z - w))
                .sum();
            let step = newton / (1.0 - newton * repulsion);
            if !step.is_finite() {
                continue;
            }
            roots[i] = z - step;
            if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
}

/// Real Newton with exactly evaluated corrections.
fn polish_real(p: &ExactPoly, dp: &ExactPoly, start: f64) -> f64 {
    let mut x = start;
    for _ in 0..MAX_NEWTON {
        let value = p.eval_wide(x);
        if value.is_zero() {
            break;
        }
        let slope = dp.eval_wide(x);
        if slope.is_zero() {
            break;
        }
        let step = value.div(slope);
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        let done = step.abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Eigenvalues of the balanced companion matrix of `p`.
fn companion_eigenvalues(p: &Polynomial<f64>) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    let lead = p.coeff(n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -p.coeff(n - 1 - j) / lead;
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    balance(&mut m);
    m.complex_eigenvalues().iter().copied().collect()
}

/// Diagonal similarity scaling by powers of two that equalizes row and column norms.
pub(crate) fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

fn check_simple(sorted: &[f64]) -> Result<()> {
    for pair in sorted.windows(2) {
        let gap = pair[1] - pair[0];
        if gap < SIMPLE_TOL * pair[0].abs().max(pair[1].abs()).max(1.0) {
            return Err(Error::NonSimpleRoot { x: pair[0], gap });
        }
    }
    Ok(())
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::families::build_family;
    use crate::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    #[test]
    fn degree_one_and_two() {
        let kleg = FamilySpec::krall_legendre(q(1, 1)).unwrap();
        let ps = build_family(&kleg, 2).unwrap();
        assert_eq!(zeros(&ps[1], &kleg).unwrap().points(), &[0.0]);
        let two = zeros(&ps[2], &kleg).unwrap();
        let r = (2.0f64 / 3.0).sqrt();
        assert!((two.points()[0] + r).abs() < 1e-15);
        assert!((two.points()[1] - r).abs() < 1e-15);

        let klag = FamilySpec::krall_laguerre(q(1, 1)).unwrap();
        let r1 = &build_family(&klag, 1).unwrap()[1];
        assert_eq!(zeros(r1, &klag).unwrap().points(), &[0.5]);
    }

    #[test]
    fn constant_has_no_zeros() {
        let spec = FamilySpec::Hermite;
        let p = Polynomial::<f64>::constant(1.0);
        assert!(matches!(zeros(&p, &spec), Err(Error::DegreeTooLow(Some(0)))));
    }

    #[test]
    fn complex_roots_rejected() {
        // x^2 + 1
        let p = Polynomial::<f64>::from_ints(&[1, 0, 1]);
        assert!(matches!(
            zeros(&p, &FamilySpec::Hermite),
            Err(Error::NonRealRoot { .. })
        ));
    }

    #[test]
    fn double_root_rejected() {
        // (x - 1/2)^2
        let p = Polynomial::<Rational>::new(vec![q(1, 4), q(-1, 1), q(1, 1)]);
        let err = zeros(&p, &FamilySpec::Hermite).unwrap_err();
        assert!(
            matches!(err, Error::NonSimpleRoot { .. } | Error::NonRealRoot { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn outside_hull_rejected() {
        let spec = FamilySpec::krall_legendre(q(1, 1)).unwrap();
        let p = Polynomial::<Rational>::from_ints(&[-2, 1]);
        assert!(matches!(zeros(&p, &spec), Err(Error::OutsideHull { .. })));
    }

    #[test]
    fn from_points_sorts_and_checks() {
        let nodes = NodeSet::from_points(vec![0.5, -1.0, 0.25]).unwrap();
        assert_eq!(nodes.points(), &[-1.0, 0.25, 0.5]);
        assert!(nodes.derivatives().is_none());
        assert!(NodeSet::from_points(vec![1.0, 1.0]).is_err());
        assert!(NodeSet::from_points(vec![]).is_err());
    }

    fn sign_changes(p: &Polynomial<Rational>, lo: f64, hi: f64, samples: usize) -> usize {
        let fp = p.to_f64();
        let mut count = 0;
        let mut prev = fp.eval(&lo).signum();
        for i in 1..=samples {
            let x = lo + (hi - lo) * i as f64 / samples as f64;
            let s = fp.eval(&x).signum();
            if s != prev && s != 0.0 {
                count += 1;
                prev = s;
            }
        }
        count
    }

    #[test]
    fn zeros_of_every_family_up_to_the_cap() {
        let specs = [
            FamilySpec::krall_legendre(q(1, 2)).unwrap(),
            FamilySpec::krall_laguerre(q(2, 1)).unwrap(),
            FamilySpec::krall_jacobi(q(1, 1), q(2, 1)).unwrap(),
            FamilySpec::jacobi(q(1, 2), q(-1, 2)).unwrap(),
            FamilySpec::laguerre(q(1, 1)).unwrap(),
            FamilySpec::Hermite,
        ];
        for spec in &specs {
            let ps = build_family(spec, 25).unwrap();
            for n in 1..=25 {
                let nodes = zeros(&ps[n], spec).unwrap_or_else(|e| panic!("{spec} N={n}: {e}"));
                assert_eq!(nodes.len(), n);
                let d = nodes.derivatives().unwrap();
                assert!(d.first.iter().all(|v| *v != 0.0));
            }
        }
    }

    #[test]
    fn sign_changes_match_degree() {
        let spec = FamilySpec::krall_legendre(q(2, 1)).unwrap();
        let ps = build_family(&spec, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(sign_changes(&ps[n], -1.0, 1.0, 20_000), n);
        }
        let spec = FamilySpec::krall_jacobi(q(0, 1), q(1, 1)).unwrap();
        let ps = build_family(&spec, 10).unwrap();
        for n in 1..=10 {
            assert_eq!(sign_changes(&ps[n], 0.0, 1.0, 20_000), n);
        }
    }

    #[test]
    fn polishing_is_idempotent() {
        let spec = FamilySpec::krall_laguerre(q(1, 1)).unwrap();
        let p = &build_family(&spec, 12).unwrap()[12];
        let e = ExactPoly::new(p);
        let de = ExactPoly::new(&p.derivative());
        for &x in zeros(p, &spec).unwrap().points() {
            let again = polish_real(&e, &de, x);
            assert!((again - x).abs() < 1e-14 * x.abs() + 1e-14);
        }
    }

    #[test]
    fn float_coefficients_also_work() {
        let spec = FamilySpec::krall_legendre(1.0).unwrap();
        let p = &build_family(&spec, 8).unwrap()[8];
        let nodes = zeros(p, &spec).unwrap();
        let exact_spec = FamilySpec::krall_legendre(q(1, 1)).unwrap();
        let exact = zeros(&build_family(&exact_spec, 8).unwrap()[8], &exact_spec).unwrap();
        for (a, b) in nodes.points().iter().zip(exact.points()) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
