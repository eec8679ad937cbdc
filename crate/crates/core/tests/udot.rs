use iquantum::qscalar::{qbinom, qint, Parity, QScalar};
use iquantum::udot::*;
use iquantum::SuiteOptions;
use proptest::prelude::*;

fn q(k: i32) -> QScalar {
    QScalar::q_pow(k)
}

fn t(a: u32, b: u32, m: i64) -> DotElement {
    DotElement::term(1, a, b, m, QScalar::one())
}

#[test]
fn f_past_e() {
    for m in -4..=4 {
        let lhs = dot_multiply(&t(0, 1, m + 2), &t(1, 0, m)).unwrap();
        let expected = t(1, 1, m).add(&DotElement::idempotent(1, m).scale(&qint(-m, 1)));
        assert_eq!(lhs, expected, "m = {m}");
    }
}

#[test]
fn idempotents_are_orthogonal() {
    let e = |m| DotElement::idempotent(1, m);
    assert_eq!(dot_multiply(&e(3), &e(3)).unwrap(), e(3));
    assert!(dot_multiply(&e(3), &e(1)).unwrap().is_zero());
    // E 1*_m carries 1*_{m+2} on its left
    assert_eq!(dot_multiply(&e(2), &t(1, 0, 0)).unwrap(), t(1, 0, 0));
    assert!(dot_multiply(&e(0), &t(1, 0, 0)).unwrap().is_zero());
}

#[test]
fn divided_powers_merge() {
    let lhs = dot_multiply(&t(1, 0, 0), &t(1, 0, -2)).unwrap();
    assert_eq!(lhs, DotElement::term(1, 2, 0, -2, qint(2, 1)));
    let lhs = dot_multiply(&t(0, 2, 0), &t(0, 1, 2)).unwrap();
    assert_eq!(lhs, DotElement::term(1, 0, 3, 2, qbinom(3, 1, 1)));
}

#[test]
fn eps_mismatch_is_an_error() {
    let x = DotElement::idempotent(1, 0);
    let y = DotElement::idempotent(2, 0);
    assert_eq!(dot_multiply(&x, &y), Err(UdotError::EpsMismatch(1, 2)));
}

#[test]
fn low_idivided_powers() {
    for eps in [1, 2] {
        for l in -3..=3 {
            for p in Parity::both() {
                let table = dot_idp(eps, 0, p, [l]);
                assert_eq!(table[&l], DotElement::idempotent(eps, l));
                let table = dot_idp(eps, 1, p, [l]);
                assert_eq!(table[&l], DotElement::b_at(eps, l));
            }
            // (B^2 - 1)/[2] for the odd parity
            let b2 = DotElement::idempotent(eps, l).left_mul_b().left_mul_b();
            let expected = b2.sub(&DotElement::idempotent(eps, l)).scale(&qint(2, eps).recip().unwrap());
            assert_eq!(dot_idp(eps, 2, Parity::Odd, [l])[&l], expected);
        }
    }
    let x = dot_idp(1, 1, Parity::Even, [4]);
    assert_eq!(x[&4], DotElement::term(1, 0, 1, 4, QScalar::one()).add(&DotElement::term(1, 1, 0, 4, q(-5))));
}

#[test]
fn closed_forms_match_at_order_one() {
    for l in -3..=3 {
        let closed = idp_closed_form(1, IdpFamily::EvenOdd, 1, l, false);
        assert_eq!(closed, dot_idp(1, 1, Parity::Even, [2 * l])[&(2 * l)]);
        let closed = idp_closed_form(1, IdpFamily::OddOdd, 0, l, false);
        assert_eq!(closed, dot_idp(1, 1, Parity::Odd, [2 * l - 1])[&(2 * l - 1)]);
    }
}

#[test]
fn render_format() {
    let x = DotElement::term(1, 2, 1, -3, q(2)).add(&DotElement::idempotent(1, -3));
    assert_eq!(x.render(), "1 * 1*[-3] + q^2 * E^(2)F^(1) 1*[-3]");
}

#[test]
fn suite_passes_and_mutation_is_caught() {
    let grid = UdotGrid { eps: vec![1], m_max: 3, lambda: (-2, 2), pbw_max: 3, label_max: 3, recursion_r_max: 4 };
    let r = verify_idp_expansion(&grid, &SuiteOptions::default());
    assert!(r.passed(), "{}", r.render_text());
    let bad = verify_idp_expansion(&grid, &SuiteOptions::mutated());
    assert!(!bad.passed());
    assert!(bad.failures.iter().all(|f| f.identity == "idp-even-2m"));
}

fn arb_dot() -> impl Strategy<Value = DotElement> {
    prop::collection::vec((0..3u32, 0..3u32, -3..4i64, -2..3i64, -2..3i32), 1..4).prop_map(|v| {
        let mut x = DotElement::zero(1);
        for (a, b, m, c, e) in v {
            x.add_term(DotTerm { a, b, m }, QScalar::monomial(c, e));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(x in arb_dot(), y in arb_dot(), z in arb_dot()) {
        let l = dot_multiply(&dot_multiply(&x, &y).unwrap(), &z).unwrap();
        let r = dot_multiply(&x, &dot_multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn reordering_round_trips(a in 0..5u32, b in 0..5u32, m in -6..7i64) {
        prop_assert_eq!(pbw_round_trip(1, a, b, m), t(a, b, m));
    }
}
