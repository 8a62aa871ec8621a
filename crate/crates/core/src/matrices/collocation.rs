//! Collocation (pseudospectral) representations `D^c_mn = (D l_n)(x_m)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{operator_of, DiffOperator, FamilySpec};
use crate::matrices::diffmat::recursive;
use crate::matrices::rep::{MatrixRep, MatrixTag};
use crate::polynomial::Polynomial;
use crate::rootfinding::NodeSet;
use crate::scalar::Scalar;

/// Below this `|a_4(x_n)|` (or `|sigma(x_n)|`) the simplified diagonal entry
/// is singular and the general assembly is used for that node.
pub const SINGULAR_GUARD: f64 = 1e-10;

/// Which simplified closed form [`collocation_rep_simplified`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplifiedForm {
    /// The formulas valid for any fourth-order operator with polynomial eigenfunctions.
    General,
    /// The formulas written out for the specific family.
    FamilySpecific,
}

/// `D^c_mn = sum_j a_j(x_m) Z^(j)_mn` on any distinct nodes.
pub fn collocation_rep<T: Scalar>(op: &DiffOperator<T>, nodes: &NodeSet) -> MatrixRep<T> {
    let x = nodes.values::<T>();
    MatrixRep::new(
        MatrixTag::Collocation,
        assemble(op, &x),
        "sum_j a_j(x_m) Z^(j)_mn, recursive Z",
    )
    .expect("square by construction")
}

fn assemble<T: Scalar>(op: &DiffOperator<T>, x: &[T]) -> DMatrix<T> {
    let n = x.len();
    let z = recursive(x, op.order(), &T::one());
    let mut d = DMatrix::<T>::zeros(n, n);
    for (order, coeff) in op.terms() {
        let values: Vec<T> = x.iter().map(|xm| coeff.eval(xm)).collect();
        for m in 0..n {
            for j in 0..n {
                d[(m, j)] = d[(m, j)].clone() + values[m].clone() * z[*order][(m, j)].clone();
            }
        }
    }
    d
}

/// `D^c` for the family operator at the zeros of `p_N`, using only `p_N'`,
/// `p_N''`, `p_N'''` at the nodes.
///
/// Classical families use the second-order closed form; Krall families use
/// either the general fourth-order form or the family-specific one. Diagonal
/// entries at nodes where the leading coefficient nearly vanishes fall back to
/// the general assembly and are reported by [`MatrixRep::flagged`].
pub fn collocation_rep_simplified<T: Scalar>(
    spec: &FamilySpec<T>,
    nodes: &NodeSet,
    form: SimplifiedForm,
) -> Result<MatrixRep<T>> {
    if let Some(tag) = nodes.family() {
        if tag != spec.tag() {
            return Err(Error::InvalidArgument(format!(
                "nodes are zeros of a {tag} polynomial, not {}",
                spec.tag()
            )));
        }
    }
    let [d1, d2, d3] = nodes.derivative_values::<T>()?;
    let ctx = Context {
        x: nodes.values::<T>(),
        d1,
        d2,
        d3,
        spec,
        op: operator_of(spec),
        mu_n: spec.eigenvalue(nodes.len()),
    };
    let n = ctx.x.len();

    let leading = ctx.op.coefficient(ctx.op.order());
    let flagged: Vec<usize> = (0..n)
        .filter(|&i| leading.eval(&ctx.x[i]).to_f64_lossy().abs() < SINGULAR_GUARD)
        .collect();
    let general = if flagged.is_empty() {
        None
    } else {
        Some(assemble(&ctx.op, &ctx.x))
    };

    let (provenance, data) = if !spec.tag().is_krall() {
        (
            "classical second-order closed form",
            DMatrix::from_fn(n, n, |m, j| ctx.classical(m, j)),
        )
    } else {
        match form {
            SimplifiedForm::General => (
                "fourth-order closed form",
                DMatrix::from_fn(n, n, |m, j| if m == j { ctx.k4_diag(m) } else { ctx.k4_off(m, j) }),
            ),
            SimplifiedForm::FamilySpecific => (
                "family-specific closed form",
                DMatrix::from_fn(n, n, |m, j| ctx.family(m, j)),
            ),
        }
    };
    let mut data = data;
    if let Some(g) = &general {
        for &i in &flagged {
            data[(i, i)] = g[(i, i)].clone();
        }
    }
    Ok(MatrixRep::new(MatrixTag::Collocation, data, provenance)?.with_flagged(flagged))
}

struct Context<'a, T: Scalar> {
    x: Vec<T>,
    d1: Vec<T>,
    d2: Vec<T>,
    d3: Vec<T>,
    spec: &'a FamilySpec<T>,
    op: DiffOperator<T>,
    mu_n: T,
}

impl<T: Scalar> Context<'_, T> {
    fn a(&self, j: usize, m: usize) -> T {
        self.op.coefficient(j).eval(&self.x[m])
    }

    fn da(&self, j: usize, m: usize) -> T {
        self.op.coefficient(j).derivative().eval(&self.x[m])
    }

    fn big_a(&self, m: usize, j: usize) -> T {
        T::one() / (self.x[m].clone() - self.x[j].clone())
    }

    fn classical(&self, m: usize, j: usize) -> T {
        let sigma = self.op.coefficient(2);
        let tau = self.op.coefficient(1);
        if m != j {
            let h = self.x[m].clone() - self.x[j].clone();
            return -(T::from_int(2) * sigma.eval(&self.x[m]) / (h.clone() * h)) * self.d1[m].clone()
                / self.d1[j].clone();
        }
        let x = &self.x[m];
        let n = T::from_usize(self.x.len());
        let s = sigma.eval(x);
        let t = tau.eval(x);
        let ds = sigma.derivative().eval(x);
        let dds = sigma.nth_derivative(2).eval(&T::zero());
        let dt = tau.derivative().eval(&T::zero());
        -(t.clone() / (T::from_int(6) * s)) * (t - T::from_int(2) * ds)
            + (n.clone() - T::one()) / T::from_int(3) * (dt + n * dds / T::from_int(2))
    }

    fn k4_diag(&self, i: usize) -> T {
        let r = |p: i64, q: i64| T::ratio(p, q);
        let (a1, a2, a3, a4) = (self.a(1, i), self.a(2, i), self.a(3, i), self.a(4, i));
        let (da1, da2, da3, da4) = (self.da(1, i), self.da(2, i), self.da(3, i), self.da(4, i));
        let (p1, p2, p3) = (self.d1[i].clone(), self.d2[i].clone(), self.d3[i].clone());
        let first = -(a3.clone() - r(4, 5) * (da4 + a3.clone())) / (T::from_int(4) * a4 * p1.clone())
            * (a3.clone() * p3.clone() + a2.clone() * p2.clone() + a1.clone() * p1.clone());
        let second = p3 / (T::from_int(3) * p1.clone()) * (a2.clone() - r(3, 5) * (da3 + a2));
        let third = p2 / (T::from_int(2) * p1) * (a1.clone() - r(2, 5) * (da2 + a1));
        first + second + third - r(1, 5) * (da1 - self.mu_n.clone())
    }

    fn k4_off(&self, m: usize, j: usize) -> T {
        let big_a = self.big_a(m, j);
        let (a2, a3, a4) = (self.a(2, m), self.a(3, m), self.a(4, m));
        let inner = a3 - T::from_int(4) * a4.clone() * big_a.clone();
        let braces = T::from_int(4) * a4 * self.d3[m].clone() + T::from_int(3) * inner.clone() * self.d2[m].clone()
            - T::from_int(2) * (T::from_int(3) * big_a.clone() * inner - a2) * self.d1[m].clone();
        -(big_a.clone() * big_a) / self.d1[j].clone() * braces
    }

    fn family(&self, m: usize, j: usize) -> T {
        let int = |v: i64| T::from_int(v);
        let r = |p: i64, q: i64| T::ratio(p, q);
        let mu = self.mu_n.clone();
        if m == j {
            let x = self.x[m].clone();
            let q3 = self.d3[m].clone() / self.d1[m].clone();
            let q2 = self.d2[m].clone() / self.d1[m].clone();
            let x2 = x.clone() * x.clone();
            return match self.spec {
                FamilySpec::KrallLegendre { alpha } => {
                    let al = alpha.clone();
                    r(8, 15) * al.clone() * (x2.clone() - int(1)) * q3
                        + r(12, 5) * al.clone() * x.clone() * q2
                        + (int(8) * al * (x2.clone() + int(1)) + mu * (x2.clone() - int(1))) / (int(5) * (x2 - int(1)))
                }
                FamilySpec::KrallLaguerre { alpha } => {
                    let al = alpha.clone();
                    -(x.clone() * (x.clone() + int(4) * al.clone())) / int(15) * q3
                        + (x2.clone() + int(2) * (int(2) * al.clone() - int(1)) * x.clone() - int(6) * al.clone())
                            / int(10)
                            * q2
                        + ((al.clone() + int(1)) * x2 + (mu - al.clone()) * x.clone() - int(2) * al) / (int(5) * x)
                }
                FamilySpec::KrallJacobi { alpha, mass } => {
                    let (al, mm) = (alpha.clone(), mass.clone());
                    let al2 = al.clone() * al.clone();
                    let xm1 = x.clone() - int(1);
                    let c3 = x.clone()
                        * ((int(4) * mm.clone() - al2.clone() + int(4)) * x.clone() - int(4) * mm.clone())
                        / int(15);
                    let c2 =
                        (int(2) * mm.clone() * xm1.clone() * (int(2) * (al.clone() + int(3)) * x.clone() - int(3))
                            - (al2.clone() - int(4)) * x.clone() * ((al.clone() + int(3)) * x.clone() - int(2)))
                            / (int(10) * xm1.clone());
                    let c0 = ((-(al2.clone() * al.clone()) - (mm.clone() + int(1)) * al2
                        + int(4) * al.clone()
                        + int(4) * mm.clone()
                        + int(4)
                        + mu.clone())
                        * x2
                        + (mm.clone() * (al - int(4)) - mu) * x.clone()
                        + int(2) * mm)
                        / (int(5) * x * xm1);
                    c3 * q3 + c2 * q2 + c0
                }
                _ => unreachable!("family-specific forms exist only for Krall families"),
            };
        }
        let big_a = self.big_a(m, j);
        let a2 = big_a.clone() * big_a.clone();
        let x = self.x[m].clone();
        let (p1, p2, p3) = (self.d1[m].clone(), self.d2[m].clone(), self.d3[m].clone());
        let braces = match self.spec {
            FamilySpec::KrallLegendre { alpha } => {
                let w = x.clone() * x.clone() - int(1);
                int(4) * w.clone() * w.clone() * p3
                    - int(12) * w.clone() * (big_a.clone() * w.clone() - int(2) * x.clone()) * p2
                    + int(8)
                        * w.clone()
                        * (int(3) * a2.clone() * w - int(6) * big_a.clone() * x + alpha.clone() + int(3))
                        * p1
            }
            FamilySpec::KrallLaguerre { alpha } => {
                int(4) * x.clone() * x.clone() * p3
                    - int(6) * x.clone() * (int(2) * big_a.clone() * x.clone() + x.clone() - int(2)) * p2
                    + int(2)
                        * x.clone()
                        * (int(12) * a2.clone() * x.clone() + int(6) * big_a.clone() * (x.clone() - int(2)) + x.clone()
                            - int(2) * (alpha.clone() + int(3)))
                        * p1
            }
            FamilySpec::KrallJacobi { alpha, mass } => {
                let (al, mm) = (alpha.clone(), mass.clone());
                let xm1 = x.clone() - int(1);
                let lin = (int(4) + al.clone()) * x.clone() - int(2);
                int(4) * x.clone() * x.clone() * xm1.clone() * xm1.clone() * p3
                    + int(6)
                        * x.clone()
                        * xm1.clone()
                        * (-(int(2) * big_a.clone() * x.clone() * xm1.clone()) + lin.clone())
                        * p2
                    - int(2)
                        * x.clone()
                        * (-(int(12) * a2.clone() * x.clone() * xm1.clone() * xm1.clone())
                            + int(6) * big_a.clone() * xm1 * lin
                            - (al.clone() * al.clone() + int(9) * al.clone() + int(2) * mm.clone() + int(14))
                                * x.clone()
                            + int(2) * (int(3) * al + mm + int(6)))
                        * p1
            }
            _ => unreachable!("family-specific forms exist only for Krall families"),
        };
        -(a2 / self.d1[j].clone()) * braces
    }
}

/// Values `(q(x_1), ..., q(x_N))` in the scalar field `T`.
pub fn nodal_values<T: Scalar>(q: &Polynomial<T>, nodes: &NodeSet) -> Vec<T> {
    nodes.values::<T>().iter().map(|x| q.eval(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_family;
    use crate::matrices::diffmat::{diffmat, DiffMethod};
    use crate::matrices::rep::max_relative_difference;
    use crate::rootfinding::zeros;
    use crate::Rational;

    #[test]
    fn first_derivative_operator_is_z1() {
        let ns = NodeSet::from_points(vec![-0.6, 0.1, 0.5, 0.9]).unwrap();
        let d = collocation_rep::<f64>(&DiffOperator::derivative(1), &ns);
        let z = diffmat::<f64>(1, &ns, DiffMethod::Recursive).unwrap();
        assert_eq!(d.data(), z.data());
        let zero = collocation_rep::<f64>(&DiffOperator::zero(), &ns);
        assert!(zero.data().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn simplified_forms_match_general_assembly() {
        let specs = [
            FamilySpec::krall_legendre(2.0).unwrap(),
            FamilySpec::krall_laguerre(1.0).unwrap(),
            FamilySpec::krall_jacobi(1.0, 2.0).unwrap(),
            FamilySpec::jacobi(0.5, -0.5).unwrap(),
            FamilySpec::laguerre(1.0).unwrap(),
            FamilySpec::Hermite,
        ];
        for spec in &specs {
            for n in 2..=8 {
                let p = &build_family(spec, n).unwrap()[n];
                let ns = zeros(p, spec).unwrap();
                let general = collocation_rep(&operator_of(spec), &ns);
                for form in [SimplifiedForm::General, SimplifiedForm::FamilySpecific] {
                    let simple = collocation_rep_simplified(spec, &ns, form).unwrap();
                    let diff = max_relative_difference(simple.data(), general.data(), 1e-12);
                    assert!(diff < 1e-10, "{spec} N={n} {form:?}: {diff:e}");
                }
            }
        }
    }

    #[test]
    fn rejects_nodes_of_another_family() {
        let leg = FamilySpec::krall_legendre(Rational::from_int(1)).unwrap();
        let lag = FamilySpec::krall_laguerre(Rational::from_int(1)).unwrap();
        let ns = zeros(&build_family(&leg, 3).unwrap()[3], &leg).unwrap();
        assert!(collocation_rep_simplified(&lag, &ns, SimplifiedForm::General).is_err());
        let bare = NodeSet::from_points(vec![0.1, 0.2]).unwrap();
        assert!(matches!(
            collocation_rep_simplified(&leg, &bare, SimplifiedForm::General),
            Err(Error::MissingDerivatives)
        ));
    }
}
