use iquantum::qscalar::{canonical_equal, parse_scalar, qbinom, qint, LaurentPoly, QScalar};
use proptest::prelude::*;

fn s(txt: &str) -> QScalar {
    parse_scalar(txt).unwrap()
}

#[test]
fn quantum_integer_values() {
    assert_eq!(qint(2, 1), s("q + q^-1"));
    assert_eq!(qint(3, 1), s("q^2 + 1 + q^-2"));
    assert_eq!(qint(2, 2), s("q^2 + q^-2"));
    assert_eq!(qint(0, 3), QScalar::zero());
    assert_eq!(qint(-2, 1), s("-q - q^-1"));
}

#[test]
fn quantum_integer_matches_quotient_definition() {
    for eps in 1..=3 {
        for n in -8i64..=8 {
            let num = &QScalar::q_pow(eps * n as i32) - &QScalar::q_pow(-eps * n as i32);
            let den = &QScalar::q_pow(eps) - &QScalar::q_pow(-eps);
            assert_eq!(qint(n, eps), &num / &den, "n={n} eps={eps}");
            assert_eq!(qint(-n, eps), -qint(n, eps));
        }
    }
}

#[test]
fn binomial_edge_cases() {
    assert_eq!(qbinom(5, 0, 1), QScalar::one());
    assert_eq!(qbinom(3, 4, 1), QScalar::zero());
    assert_eq!(qbinom(4, -1, 1), QScalar::zero());
    assert_eq!(qbinom(4, 2, 1), s("q^4 + q^2 + 2 + q^-2 + q^-4"));
    // [-1 choose d] = (-1)^d
    for d in 0..6 {
        let expect = if d % 2 == 0 { QScalar::one() } else { -QScalar::one() };
        assert_eq!(qbinom(-1, d, 1), expect);
    }
}

#[test]
fn binomial_matches_falling_product() {
    for eps in 1..=2 {
        for n in -6i64..=6 {
            for d in 0i64..=5 {
                let mut num = QScalar::one();
                let mut den = QScalar::one();
                for k in 0..d {
                    num = &num * &qint(n - k, eps);
                    den = &den * &qint(k + 1, eps);
                }
                assert_eq!(qbinom(n, d, eps), &num / &den, "n={n} d={d} eps={eps}");
            }
        }
    }
}

#[test]
fn pascal_rule() {
    for n in -6i64..=6 {
        for d in 0i64..=6 {
            let lhs = qbinom(n, d, 1);
            let rhs = &(&QScalar::q_pow(d as i32) * &qbinom(n - 1, d, 1))
                + &(&QScalar::q_pow((d - n) as i32) * &qbinom(n - 1, d - 1, 1));
            assert_eq!(lhs, rhs, "n={n} d={d}");
        }
    }
}

#[test]
fn q_squared_binomial_recursion() {
    for e in [-1i32, 1] {
        for k in -5i64..=5 {
            for u in 0i64..=5 {
                let lhs = qbinom(k + 1, u, 2);
                let a = &QScalar::q_pow(-2 * e * u as i32) * &qbinom(k, u, 2);
                let b = &QScalar::q_pow(e * (2 * k - 2 * u + 2) as i32) * &qbinom(k, u - 1, 2);
                assert_eq!(lhs, &a + &b, "k={k} u={u} e={e}");
            }
        }
    }
}

#[test]
fn reduction_and_equality() {
    let q = QScalar::q_pow(1);
    assert!(canonical_equal(&(&q / &q), &QScalar::one()));
    assert!(!canonical_equal(&q, &QScalar::q_pow(-1)));
    let two = qint(2, 1);
    assert!(canonical_equal(&(&two * &two), &s("q^2 + 2 + q^-2")));
    let x = s("(q^2 - 1)/(q - 1)");
    assert_eq!(x, s("q + 1"));
    assert!(x.is_polynomial());
    let y = s("1/(q + 1)");
    assert_eq!(y.denom(), &LaurentPoly::from_i64_vec(0, vec![1, 1]));
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(QScalar::zero().recip().is_err());
    assert!(parse_scalar("1/(q - q)").is_err());
}

#[test]
fn render_forms() {
    assert_eq!(s("q^2 - 1").render(), "q^2 - 1");
    assert_eq!(s("-3*q^-2 + q").render(), "q - 3*q^-2");
    assert_eq!(QScalar::zero().render(), "0");
    assert_eq!(s("1/(q+1)").render(), "(1)/(q + 1)");
}

#[test]
fn overflow_promotes_to_bignum() {
    let big = LaurentPoly::constant(i64::MAX);
    let sq = &big * &big;
    assert!(!sq.is_integral());
    let back = &sq - &sq;
    assert!(back.is_zero());
    let sum = &big + &big;
    assert_eq!(&sum - &big, big);
}

fn small_scalar() -> impl Strategy<Value = QScalar> {
    (prop::collection::vec((-3i64..=3, -3i32..=3), 1..4), prop::collection::vec((-2i64..=2, 0i32..=2), 0..3)).prop_map(
        |(num, den)| {
            let mut n = LaurentPoly::zero();
            for (c, k) in num {
                n.add_scaled(&LaurentPoly::monomial(c, k), 1, 0);
            }
            let mut d = LaurentPoly::one();
            for (c, k) in den {
                d.add_scaled(&LaurentPoly::monomial(c, k), 1, 0);
            }
            if d.is_zero() {
                d = LaurentPoly::one();
            }
            QScalar::try_from_fraction(n, d).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, QScalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn render_parse_round_trip(a in small_scalar()) {
        let txt = a.render();
        prop_assert_eq!(parse_scalar(&txt).unwrap(), a);
    }

    #[test]
    fn normalization_is_idempotent(a in small_scalar()) {
        let again = QScalar::try_from_fraction(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again, a);
    }
}
