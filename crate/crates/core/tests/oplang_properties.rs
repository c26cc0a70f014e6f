mod common;

use proptest::prelude::*;
use swanson_core::oplang::{parse_str, tokenize, Expr, Scalar};

#[test]
fn corpus_round_trips() {
    assert_eq!(common::ROUND_TRIP_CORPUS.len(), 50);
    for src in common::ROUND_TRIP_CORPUS {
        let ast = parse_str(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = ast.to_string();
        let again = parse_str(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again, ast, "{src} -> {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn token_offsets_increase() {
    for src in common::ROUND_TRIP_CORPUS {
        let t = tokenize(src).unwrap();
        assert!(t.windows(2).all(|w| w[0].offset < w[1].offset), "{src}");
        assert!(t.iter().all(|t| !t.lexeme.is_empty()));
    }
}

const VOCABULARY: [&str; 30] = [
    "A",
    "L",
    "hplus",
    "K",
    "J",
    "x_1",
    "2",
    "0.5",
    "3/4",
    "1e-3",
    "+",
    "-",
    "\u{2212}",
    "*",
    "^",
    "'",
    "[",
    "]",
    "(",
    ")",
    ",",
    " ",
    "/",
    ".",
    "1.",
    "e",
    "$",
    ":=",
    "\u{3bb}",
    "9999999999999999999999",
];

fn token_soup() -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(&VOCABULARY[..]), 0..40).prop_map(|v| v.concat())
}

fn check_total(src: &str) {
    if let Err(e) = parse_str(src) {
        assert!(e.offset <= src.chars().count(), "{src:?}: {e}");
        assert!(!e.to_string().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn parser_is_total_on_token_soup(src in token_soup()) {
        check_total(&src);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn parser_is_total_on_arbitrary_text(src in ".{0,60}") {
        check_total(&src);
    }

    #[test]
    fn printed_trees_reparse(e in expr_tree()) {
        let printed = e.to_string();
        let again = parse_str(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(again, e);
    }
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        proptest::sample::select(vec!["A", "L", "K", "hplus", "X", "J"]).prop_map(Expr::symbol),
        (0u32..1000).prop_map(|n| Expr::Scalar(Scalar::Number(n as f64 / 8.0))),
        (0u64..50, 1u64..50).prop_map(|(p, q)| Expr::Scalar(Scalar::Rational(p, q))),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::commutator(a, b)),
            (inner.clone(), 0u32..5).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            inner.clone().prop_map(Expr::dagger),
            inner.prop_map(Expr::negate),
        ]
    })
}
