use iquantum::cartan::CartanDatum;
use iquantum::drinfeld::Side;
use iquantum::exprdsl::*;
use iquantum::qscalar::{qint, Parity};
use num_bigint::BigInt;
use proptest::prelude::*;

fn b(i: usize) -> Ast {
    Ast::Gen(GenKind::B, i)
}

fn int(n: i64) -> Arg {
    Arg::Int(BigInt::from(n))
}

#[test]
fn parses_commutator() {
    let ast = parse("B[1]*B[2] - B[2]*B[1]").unwrap();
    let expected = Ast::Sum(vec![(false, Ast::Product(vec![b(1), b(2)])), (true, Ast::Product(vec![b(2), b(1)]))]);
    assert_eq!(ast, expected);
}

#[test]
fn parses_calls_and_powers() {
    assert_eq!(parse("idp(1, 3, odd)").unwrap(), Ast::Call(CallName::Idp, vec![int(1), int(3), Arg::Parity(Parity::Odd)]));
    let ast = parse("E[1]^2 * qbinom(2,1)").unwrap();
    let expected = Ast::Product(vec![Ast::Power(Box::new(Ast::Gen(GenKind::E, 1)), 2), Ast::Call(CallName::Qbinom, vec![int(2), int(1)])]);
    assert_eq!(ast, expected);
    let ast = parse("fplus(1,2,1,2,+1,F)").unwrap();
    assert_eq!(ast, Ast::Call(CallName::Fplus, vec![int(1), int(2), int(1), int(2), int(1), Arg::Side(Side::F)]));
    assert_eq!(parse("q^-2").unwrap(), Ast::Power(Box::new(Ast::Scalar(Scalar::Q)), -2));
    assert_eq!(parse("B[1]^1").unwrap(), b(1));
}

#[test]
fn renders_with_minimal_parentheses() {
    assert_eq!(parse("B[1] * (B[2]+B[3])").unwrap().render(), "B[1]*(B[2]+B[3])");
    assert_eq!(parse("(B[1]*B[2])^3 - q^-2*k[1]").unwrap().render(), "(B[1]*B[2])^3-q^-2*k[1]");
    assert_eq!(parse("-(B[1] - B[2])").unwrap().render(), "-(B[1]-B[2])");
    assert_eq!(Ast::Power(Box::new(b(2)), 1).render(), "B[2]");
    assert_eq!(parse("y(1,2,1,2,even,odd,-1)").unwrap().render(), "y(1,2,1,2,even,odd,-1)");
}

#[test]
fn diagnostics_report_offset_and_expectation() {
    let err = parse("B[1] * ").unwrap_err();
    assert_eq!(err.offset, 7);
    assert!(err.expected.iter().any(|e| e == "generator"));
    assert_eq!(err.found, "end of input");
    let err = parse("B[1] B[2]").unwrap_err();
    assert_eq!(err.offset, 5);
    assert!(err.expected.iter().any(|e| e == "'*'"));
    let err = parse("idp(1, 2)").unwrap_err();
    assert_eq!(err.offset, 0);
    assert!(err.expected[0].contains("3 arguments"));
    let err = parse("B[0]").unwrap_err();
    assert_eq!(err.offset, 2);
    let err = parse("B[1] $").unwrap_err();
    assert_eq!(err.offset, 5);
    let err = parse("idp(1, 2, maybe)").unwrap_err();
    assert_eq!(err.offset, 10);
    assert!(err.to_string().contains("byte 10"));
}

#[test]
fn equations() {
    let (l, r) = parse_equation("B[1]*k[1] = k[1]*B[1]").unwrap();
    assert_eq!(l.render(), "B[1]*k[1]");
    assert_eq!(r.render(), "k[1]*B[1]");
    let (_, r) = parse_equation("B[1]").unwrap();
    assert_eq!(r.render(), "0");
    assert!(parse_equation("B[1] = B[2] = B[3]").is_err());
}

#[test]
fn evaluates_classical_relation_to_zero() {
    let ev = Evaluator::new(&CartanDatum::a2());
    let ast = parse("fplus(1,2,1,2,+1)").unwrap();
    assert_eq!(infer_target(&ast), Target::Double);
    let v = eval(&ast, &ev, Target::Double).unwrap();
    assert!(!matches!(&v, Value::Double(x) if x.is_empty()));
    assert!(ev.is_zero(&v));
    assert!(matches!(eval(&ast, &ev, Target::Iquantum), Err(EvalError::Incompatible(_))));
}

#[test]
fn evaluates_generators_and_centrality() {
    let d = CartanDatum::a2();
    let ev = Evaluator::new(&d);
    let v = eval(&parse("B[1]").unwrap(), &ev, Target::Iquantum).unwrap();
    assert_eq!(v, Value::Iquantum(ev.iquantum().b(0)));
    let v = eval(&parse("k[1]*B[1]-B[1]*k[1]").unwrap(), &ev, Target::Double).unwrap();
    assert!(ev.is_zero(&v));
    assert_eq!(eval(&parse("B[3]").unwrap(), &ev, Target::Iquantum), Err(EvalError::UnknownNode(3)));
}

#[test]
fn evaluates_idivided_powers_and_scalars() {
    let ev = Evaluator::new(&CartanDatum::a2());
    let alg = ev.iquantum();
    let v = eval(&parse("idp(1,2,odd)").unwrap(), &ev, Target::Iquantum).unwrap();
    assert_eq!(v, Value::Iquantum(alg.idivided_power(0, 2, Parity::Odd)));
    let v = eval(&parse("(B[1]^2 - q*k[1]) * qint(2)^-1").unwrap(), &ev, Target::Iquantum).unwrap();
    assert_eq!(v, Value::Iquantum(alg.idivided_power(0, 2, Parity::Odd)));
    let v = eval(&parse("qbinom(4,2) - qint(3)*qint(4)*qint(2)^-1").unwrap(), &ev, Target::Iquantum).unwrap();
    assert!(ev.is_zero(&v));
    let v = eval(&parse("k[1]^-2*k[1]^2").unwrap(), &ev, Target::Iquantum).unwrap();
    assert_eq!(v, Value::Iquantum(alg.one()));
    assert!(matches!(eval(&parse("B[1]^-1").unwrap(), &ev, Target::Iquantum), Err(EvalError::NotInvertible(_))));
    let v = eval(&parse("Kt[1]^-1*Kt[1] - 1").unwrap(), &ev, Target::Double).unwrap();
    assert!(ev.is_zero(&v));
    let v = eval(&parse("dp(1,2,E) - E[1]^2*qint(2)^-1").unwrap(), &ev, Target::Double).unwrap();
    assert!(ev.is_zero(&v));
    let v = eval(&parse("dp(2,3)").unwrap(), &ev, Target::Iquantum).unwrap();
    let f = qint(3, 1) * qint(2, 1);
    assert_eq!(v, Value::Iquantum(alg.pow(&alg.b(1), 3).scale(&f.recip().unwrap())));
}

#[test]
fn ytilde_calls() {
    let ev = Evaluator::new(&CartanDatum::a2());
    for name in ["y", "yp"] {
        let v = eval(&parse(&format!("{name}(1,2,1,2,even,odd,+1)")).unwrap(), &ev, Target::Iquantum).unwrap();
        assert!(ev.is_zero(&v));
        let v = eval(&parse(&format!("{name}(1,2,1,1,even,odd,+1)")).unwrap(), &ev, Target::Iquantum).unwrap();
        assert!(!ev.is_zero(&v));
    }
    assert!(matches!(eval(&parse("y(1,1,1,1,even,odd,1)").unwrap(), &ev, Target::Iquantum), Err(EvalError::Iqg(_))));
    assert!(matches!(eval(&parse("y(1,2,1,1,even,odd,2)").unwrap(), &ev, Target::Iquantum), Err(EvalError::BadArgument(_))));
}

#[test]
fn mixed_double_expressions_embed() {
    let ev = Evaluator::new(&CartanDatum::a2());
    let ast = parse("B[1] - F[1] - E[1]*Ktp[1]").unwrap();
    assert_eq!(infer_target(&ast), Target::Double);
    assert!(ev.is_zero(&eval(&ast, &ev, Target::Double).unwrap()));
}

fn arb_ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (1..3usize).prop_map(b),
        (1..3usize).prop_map(|i| Ast::Gen(GenKind::K, i)),
        (0..4i64).prop_map(|n| Ast::Scalar(Scalar::Int(BigInt::from(n)))),
        Just(Ast::Scalar(Scalar::Q)),
        (1..3i64, 0..3i64).prop_map(|(i, m)| Ast::Call(CallName::Idp, vec![int(i), int(m), Arg::Parity(Parity::Odd)])),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec((any::<bool>(), inner.clone()), 1..3)
                .prop_filter("a lone positive term is not a sum", |v| v.len() > 1 || v[0].0)
                .prop_map(Ast::Sum),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Ast::Product),
            (inner, 2..4i64).prop_map(|(x, n)| Ast::Power(Box::new(x), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(ast in arb_ast()) {
        let text = ast.render();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &ast);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn eval_is_a_homomorphism(x in arb_ast(), y in arb_ast()) {
        let ev = Evaluator::new(&CartanDatum::a2());
        let alg = ev.iquantum();
        let get = |a: &Ast| match eval(a, &ev, Target::Iquantum).unwrap() { Value::Iquantum(v) => v, _ => unreachable!() };
        let (vx, vy) = (get(&x), get(&y));
        let sum = Ast::Sum(vec![(false, x.clone()), (false, y.clone())]);
        prop_assert_eq!(get(&sum), vx.add(&vy));
        let prod = Ast::Product(vec![x, y]);
        prop_assert_eq!(get(&prod), alg.mul(&vx, &vy));
    }
}
