//! `parse(emit(report)) == report` for arbitrary documents.

use std::collections::BTreeMap;

use krall_cli::config::NSpec;
use krall_cli::output::{CheckRow, Document, Meta, Number, PolynomialRow, Real, ResultRow, Summary};
use proptest::prelude::*;

/// Finite doubles and infinities; NaN never compares equal, so it is tested separately.
fn real() -> impl Strategy<Value = Real> {
    prop_oneof![
        8 => any::<f64>().prop_filter("not NaN", |v| !v.is_nan()).prop_map(Real),
        1 => (-1e-8f64..1e-8).prop_map(Real),
        1 => Just(Real(f64::INFINITY)),
    ]
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_-]{0,12}"
}

fn result_row() -> impl Strategy<Value = ResultRow> {
    (
        name(),
        proptest::option::of(name()),
        name(),
        1usize..20,
        0usize..20,
        proptest::option::of(1usize..20),
        real(),
        any::<bool>(),
    )
        .prop_map(|(identity, variant, family, big_n, m, n, residual, pass)| ResultRow {
            identity,
            variant,
            family,
            params: "alpha=1/2;M=3".into(),
            big_n,
            m,
            n,
            residual,
            pass,
        })
}

fn document() -> impl Strategy<Value = Document> {
    (
        proptest::collection::vec(result_row(), 0..6),
        proptest::option::of(real()),
        any::<bool>(),
        any::<u64>(),
        prop_oneof![
            Just(None),
            (1usize..30).prop_map(|n| Some(NSpec::One(n))),
            Just(Some(NSpec::Range("2..12".into())))
        ],
        proptest::collection::vec((-50i64..50, 1i64..9), 0..4),
    )
        .prop_map(|(results, max_residual, pass, seed, n, exact)| {
            let mut params = BTreeMap::new();
            params.insert("alpha".to_string(), "3/2".to_string());
            let checks = results
                .iter()
                .map(|r| CheckRow {
                    identity: r.identity.clone(),
                    variant: r.variant.clone(),
                    family: r.family.clone(),
                    params: r.params.clone(),
                    big_n: r.big_n,
                    max_residual: r.residual,
                    cross_check: max_residual,
                    skipped: vec![1],
                    notes: vec!["a note, with \"quotes\"".into()],
                    pass: r.pass,
                })
                .collect();
            let worst = results.first().cloned();
            Document {
                meta: Meta {
                    command: "verify".into(),
                    family: "all".into(),
                    params,
                    n,
                    tolerance: Real(1e-8),
                    seed,
                    mode: "double-double".into(),
                },
                polynomials: vec![PolynomialRow {
                    family: "krall-jacobi".into(),
                    params: String::new(),
                    degree: exact.len(),
                    coeffs: exact.iter().map(|(p, q)| Number::Exact(format!("{p}/{q}"))).collect(),
                }],
                zeros: Vec::new(),
                matrix: None,
                results,
                checks,
                summary: Summary {
                    max_residual,
                    pass,
                    worst,
                    passing_variants: None,
                },
            }
        })
}

proptest! {
    #[test]
    fn documents_round_trip(doc in document()) {
        let text = doc.to_json().unwrap();
        let back = Document::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json().unwrap(), text);
    }
}

#[test]
fn nan_residuals_survive() {
    let text = r#"{"meta":{"command":"verify","family":"all","params":{},"tolerance":1e-8,"seed":0,"mode":"float"},
        "summary":{"max_residual":"NaN","pass":false}}"#;
    let doc = Document::from_json(text).unwrap();
    assert!(doc.summary.max_residual.unwrap().0.is_nan());
    let again = Document::from_json(&doc.to_json().unwrap()).unwrap();
    assert!(again.summary.max_residual.unwrap().0.is_nan());
}
