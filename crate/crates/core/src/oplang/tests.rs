use super::*;
use crate::model::default_grid;
use crate::susy::{build_operator_set, ExtensionSpec};
use crate::ModelParams;

fn prelude() -> Prelude {
    let p = ModelParams::new(2.0, 0.5, 0.25).unwrap();
    let os = build_operator_set(&p, &ExtensionSpec::new(2).unwrap(), &default_grid(&p)).unwrap();
    Prelude::new(&os)
}

#[test]
fn evaluation_examples() {
    let pre = prelude();
    let b = &pre.bindings;
    let zero = evaluate(&parse_str("[A, A]").unwrap(), b).unwrap();
    assert_eq!(zero.sup_norm(), 0.0);
    let h = evaluate(&parse_str("hplus' - hplus").unwrap(), b).unwrap();
    assert!(h.sup_norm() <= 1e-12 * b.operator("hplus").unwrap().sup_norm());
    let k = evaluate(&parse_str("K - A*L*A'").unwrap(), b).unwrap();
    assert!(k.sup_norm() <= 1e-10 * b.operator("K").unwrap().sup_norm());
}

#[test]
fn evaluation_errors() {
    let b = &prelude().bindings;
    assert_eq!(evaluate(&parse_str("nope * L").unwrap(), b).unwrap_err(), EvalError::Unbound("nope".into()));
    assert_eq!(evaluate(&parse_str("J * 2").unwrap(), b).unwrap_err(), EvalError::ScalarOnly);
    assert_eq!(evaluate(&parse_str("L^17").unwrap(), b).unwrap_err(), EvalError::PowerTooLarge(17));
    let mut other = b.clone();
    other.bind_operator("Y", crate::OperatorMatrix::identity(crate::Grid::new(3.0, 11).unwrap()));
    assert!(matches!(evaluate(&parse_str("Y + L").unwrap(), &other), Err(EvalError::Numerics(_))));
}

#[test]
fn scalars_broadcast_and_commute() {
    let b = &prelude().bindings;
    let x = b.operator("X").unwrap();
    let got = evaluate(&parse_str("2 + X - 1/2").unwrap(), b).unwrap();
    let want = x + 1.5;
    assert!((&got - &want).sup_norm() <= 1e-14);
    let z = evaluate_value(&parse_str("[J, X]").unwrap(), b).unwrap();
    assert!(matches!(z, Value::Scalar(v) if v == 0.0));
    let p = evaluate(&parse_str("X^0").unwrap(), b).unwrap();
    assert_eq!(p.to_dense(), crate::OperatorMatrix::identity(*x.grid()).to_dense());
}

#[test]
fn evaluation_is_compositional() {
    let b = &prelude().bindings;
    let (ea, eb) = (parse_str("A * L").unwrap(), parse_str("twoOverJ * K'").unwrap());
    let sum = evaluate(&Expr::add(ea.clone(), eb.clone()), b).unwrap();
    let parts = &evaluate(&ea, b).unwrap() + &evaluate(&eb, b).unwrap();
    assert_eq!(sum.to_dense(), parts.to_dense());
}

#[test]
fn split_expands_top_level_commutators() {
    let terms = split_terms(&parse_str("-[a, b] + c - (d - e)").unwrap());
    let printed: Vec<(f64, String)> = terms.iter().map(|(s, t)| (*s, t.to_string())).collect();
    assert_eq!(
        printed,
        vec![(-1.0, "a * b".into()), (1.0, "b * a".into()), (1.0, "c".into()), (-1.0, "d".into()), (1.0, "e".into())]
    );
}

#[test]
fn check_zero_examples() {
    let pre = prelude();
    let ok = check_zero("comm := [hplus, L] + twoOverJ*L", &pre, 1e-4).unwrap();
    assert_eq!(ok.name, "comm");
    assert!(ok.pass, "{}", ok.residual);
    let flipped = check_zero("[hplus, L] \u{2212} twoOverJ*L", &pre, 1e-4).unwrap();
    assert!(!flipped.pass && flipped.residual > 0.1);
    let product = check_zero("LdagL \u{2212} (J*hplus \u{2212} JomegaHalf + JE \u{2212} one)", &pre, 1e-4).unwrap();
    assert!(product.pass, "{}", product.residual);
    assert!(check_zero("hplus' - hplus", &pre, 1e-12).unwrap().pass);
}

#[test]
fn check_zero_frames() {
    let pre = prelude();
    let conj = check_zero("eta*Hplus - Hplus'*eta", &pre, 1e-12).unwrap();
    assert!(conj.pass, "{}", conj.residual);
    let expr = check_zero("HplusExpr - Hplus", &pre, 1e-4).unwrap();
    assert!(expr.pass, "{}", expr.residual);
    let theta = check_zero("Hplus - thetadag*theta - omega*1/2", &pre, 1e-4).unwrap();
    assert!(theta.pass, "{}", theta.residual);
}

#[test]
fn check_zero_offsets_include_label() {
    let pre = prelude();
    let e = check_zero("x := [hplus, L", &pre, 1e-4).unwrap_err();
    assert_eq!(e, OplangError::Parse(ParseError::new(ParseErrorKind::Unbalanced { open: '[', opened_at: 5 }, 14)));
    let e = check_zero("[hplus, L", &pre, 1e-4).unwrap_err();
    assert_eq!(e.to_string(), "unbalanced bracket at offset 9 (opened at offset 0)");
    assert_eq!(check_zero("J + 1", &pre, 1e-4).unwrap_err(), OplangError::Eval(EvalError::ScalarOnly));
}
