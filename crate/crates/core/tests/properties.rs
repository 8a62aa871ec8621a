//! Property tests over sampled family parameters, node sets and test
//! polynomials.

use krall_core::families::{apply_operator, build_family, operator_of, MomentFunctional};
use krall_core::identities::{
    spectrum_report, verify_family_identity, verify_krall4, verify_theorem1, Settings, Variant,
};
use krall_core::matrices::{
    christoffel_numbers, collocation_rep, collocation_rep_simplified, diffmat, diffmat_with_lead,
    max_relative_difference, nodal_values, DiffMethod, SimplifiedForm,
};
use krall_core::rootfinding::zeros;
use krall_core::{DoubleDouble, FamilySpec, NodeSet, Polynomial, Rational, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Positive rationals with small numerator and denominator.
fn positive() -> impl Strategy<Value = Rational> {
    (1i64..8, 1i64..5).prop_map(|(p, d)| q(p, d))
}

/// Rationals in (-1, 3].
fn above_minus_one() -> impl Strategy<Value = Rational> {
    (-3i64..12, Just(4i64)).prop_map(|(p, d)| q(p, d))
}

fn krall_spec() -> impl Strategy<Value = FamilySpec<Rational>> {
    prop_oneof![
        positive().prop_map(|a| FamilySpec::krall_legendre(a).unwrap()),
        positive().prop_map(|a| FamilySpec::krall_laguerre(a).unwrap()),
        (above_minus_one(), positive()).prop_map(|(a, m)| FamilySpec::krall_jacobi(a, m).unwrap()),
    ]
}

fn any_spec() -> impl Strategy<Value = FamilySpec<Rational>> {
    prop_oneof![
        3 => krall_spec(),
        1 => (above_minus_one(), above_minus_one()).prop_map(|(a, b)| FamilySpec::jacobi(a, b).unwrap()),
        1 => above_minus_one().prop_map(|a| FamilySpec::laguerre(a).unwrap()),
        1 => Just(FamilySpec::hermite()),
    ]
}

fn small_poly() -> impl Strategy<Value = Polynomial<Rational>> {
    proptest::collection::vec(-20i64..20, 0..9).prop_map(|c| Polynomial::from_ints(&c))
}

/// Zeros of `p_n` for an exact spec, with the spec rounded to `T`.
fn krall_zeros<T: Scalar>(spec: &FamilySpec<Rational>, n: usize) -> (FamilySpec<T>, NodeSet) {
    let fam = build_family(spec, n).unwrap();
    let nodes = zeros(&fam[n], spec).unwrap();
    (spec.map(T::from_rational), nodes)
}

/// Chebyshev points of the first kind on `[-1, 1]`, each moved by up to a
/// fifth of the local spacing.
fn jittered_nodes(n: usize, seed: u64) -> NodeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1.0 / n as f64;
    let points = (0..n)
        .map(|j| {
            let t = std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            -t.cos() + rng.random_range(-0.2..0.2) * h * t.sin()
        })
        .collect();
    NodeSet::from_points(points).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_preserves_degree(spec in any_spec(), p in small_poly()) {
        let image = apply_operator(&operator_of(&spec), &p);
        prop_assert!(image.degree() <= p.degree());
    }

    #[test]
    fn hankel_matrices_are_positive_definite(spec in any_spec(), order in 0usize..=6) {
        prop_assert!(MomentFunctional::new(&spec).hankel_positive_definite(order));
    }

    #[test]
    fn eigenfunctions_and_orthogonality(spec in krall_spec(), nu in 0usize..7) {
        let fam = build_family(&spec, nu).unwrap();
        let op = operator_of(&spec);
        prop_assert_eq!(apply_operator(&op, &fam[nu]), fam[nu].scale(&spec.eigenvalue(nu)));
        let functional = MomentFunctional::new(&spec);
        for m in 0..nu {
            prop_assert_eq!(functional.inner_product(&fam[m], &fam[nu]), Rational::from_int(0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zeros_are_real_simple_and_in_the_hull(spec in any_spec(), n in 1usize..10) {
        let (spec_f, nodes) = krall_zeros::<f64>(&spec, n);
        let (lo, hi) = spec_f.hull();
        let x = nodes.points();
        prop_assert_eq!(x.len(), n);
        prop_assert!(x.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(x.iter().all(|&v| v > lo && v < hi));
    }

    #[test]
    fn differentiation_is_exact_on_low_degree(
        n in 2usize..9,
        seed in any::<u64>(),
        coeffs in proptest::collection::vec(-1.0f64..1.0, 8),
    ) {
        let nodes = jittered_nodes(n, seed);
        let poly = Polynomial::new(coeffs[..n].to_vec());
        let values = nodal_values(&poly, &nodes);
        for k in 1..=4 {
            let z = diffmat::<f64>(k, &nodes, DiffMethod::Recursive).unwrap();
            let applied = z.data() * nalgebra::DVector::from_vec(values.clone());
            let scale = z.norm_inf().max(1.0) * values.iter().fold(1.0f64, |s, v| s.max(v.abs()));
            for (i, &xi) in nodes.points().iter().enumerate() {
                let err = (applied[i] - poly.eval_derivative(k, &xi)).abs();
                prop_assert!(err <= 1e-9 * scale, "k = {k}, node {i}: {err:e} vs scale {scale:e}");
            }
        }
    }

    #[test]
    fn differentiation_formulas_agree(n in 2usize..9, seed in any::<u64>()) {
        let nodes = jittered_nodes(n, seed);
        for k in 1..=4 {
            let rec = diffmat::<f64>(k, &nodes, DiffMethod::Recursive).unwrap();
            let alt = diffmat::<f64>(k, &nodes, DiffMethod::Alternative).unwrap();
            prop_assert!(max_relative_difference(rec.data(), alt.data(), 1e-12) <= 1e-11);
            if k <= 2 {
                let exp = diffmat::<f64>(k, &nodes, DiffMethod::Explicit).unwrap();
                prop_assert!(max_relative_difference(rec.data(), exp.data(), 1e-12) <= 1e-11);
            }
        }
    }

    #[test]
    fn node_polynomial_lead_cancels(spec in krall_spec(), n in 2usize..8) {
        let fam = build_family(&spec, n).unwrap();
        let nodes = zeros(&fam[n], &spec).unwrap();
        let lead = fam[n].leading().unwrap().to_f64_lossy();
        for k in 1..=4 {
            for method in [DiffMethod::Recursive, DiffMethod::Alternative] {
                let monic = diffmat::<f64>(k, &nodes, method).unwrap();
                let scaled = diffmat_with_lead::<f64>(k, &nodes, method, &lead).unwrap();
                prop_assert!(max_relative_difference(monic.data(), scaled.data(), 1e-12) <= 1e-11);
            }
        }
    }

    #[test]
    fn simplified_collocation_matches_general(spec in any_spec(), n in 1usize..9) {
        let (spec_f, nodes) = krall_zeros::<f64>(&spec, n);
        let general = collocation_rep(&operator_of(&spec_f), &nodes);
        for form in [SimplifiedForm::General, SimplifiedForm::FamilySpecific] {
            let simplified = collocation_rep_simplified(&spec_f, &nodes, form).unwrap();
            // Unit floor: for N = 1 both sides are rounding noise around mu_0 = 0.
            let diff = max_relative_difference(general.data(), simplified.data(), 1.0);
            prop_assert!(diff <= 1e-10, "{form:?}: {diff:e}");
        }
    }

    #[test]
    fn spectrum_does_not_depend_on_nodes(spec in krall_spec(), n in 1usize..7, seed in any::<u64>()) {
        let spec_f = spec.map(Rational::to_f64_lossy);
        let report = spectrum_report(&spec_f, n, &jittered_nodes(n, seed), &Settings::default()).unwrap();
        prop_assert!(report.pass, "{:e}", report.max_residual);
    }

    #[test]
    fn gauss_quadrature_is_exact(spec in any_spec(), n in 1usize..9) {
        let (_, nodes) = krall_zeros::<f64>(&spec, n);
        let lambda = christoffel_numbers::<f64>(&nodes, &spec.map(Rational::to_f64_lossy)).unwrap();
        let functional = MomentFunctional::new(&spec);
        for k in 0..2 * n {
            let sum: f64 = lambda.iter().zip(nodes.points()).map(|(l, x)| l * x.powi(k as i32)).sum();
            let exact = functional.moment(k).to_f64_lossy();
            prop_assert!((sum - exact).abs() <= 1e-10 * exact.abs().max(1.0), "k = {k}: {sum} vs {exact}");
        }
        prop_assert!(lambda.iter().all(|&l| l > 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fourth_order_identity_tracks_the_eigenpair_relation(spec in krall_spec(), n in 2usize..7) {
        let (spec_dd, _) = krall_zeros::<DoubleDouble>(&spec, n);
        let settings = Settings::default();
        let general = verify_krall4(&spec_dd, n, &settings).unwrap();
        let eigen = verify_theorem1(&spec_dd, n, &settings).unwrap();
        prop_assert!(general.pass && eigen.pass);
        prop_assert!(general.cross_check.unwrap() <= 1e-20);
        for (a, b) in general.cells.iter().zip(&eigen.cells) {
            prop_assert_eq!((a.m, a.n), (b.m, b.n));
            prop_assert!((a.residual - b.residual).abs() <= 1e-20);
        }
    }

    #[test]
    fn laguerre_verdict_is_stable(alpha in positive(), n in 2usize..8) {
        let spec = FamilySpec::krall_laguerre(DoubleDouble::from_rational(&alpha)).unwrap();
        let settings = Settings::with_tolerance(1e-7);
        let printed = verify_family_identity(&spec, n, Variant::Printed, &settings).unwrap();
        let corrected = verify_family_identity(&spec, n, Variant::Corrected, &settings).unwrap();
        prop_assert!(corrected.cells.iter().all(|c| c.pass));
        prop_assert!(printed.cells.iter().all(|c| !c.pass));
    }
}
