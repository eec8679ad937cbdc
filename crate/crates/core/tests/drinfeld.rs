use iquantum::cartan::CartanDatum;
use iquantum::drinfeld::*;
use iquantum::qscalar::{qint, QScalar};
use iquantum::SuiteOptions;
use proptest::prelude::*;

fn q(k: i32) -> QScalar {
    QScalar::q_pow(k)
}

#[test]
fn f_e_rewrites_to_normal_form() {
    let alg = DoubleAlgebra::new(&CartanDatum::a2());
    let fe = alg.mul(&alg.f(0), &alg.e(0));
    let c = &q(1) - &q(-1);
    let expected = alg.mul(&alg.e(0), &alg.f(0)).sub(&alg.kt(0, 1).sub(&alg.ktp(0, 1)).scale(&c.recip().unwrap()));
    assert_eq!(fe, expected);
    assert_eq!(alg.terms(&fe).len(), 3);
}

#[test]
fn cartan_elements_commute_with_twist() {
    let d = CartanDatum::b2();
    let alg = DoubleAlgebra::new(&d);
    // K̃_1 E_1 = q_1^2 E_1 K̃_1 and K̃'_1 E_1 = q_1^{-2} E_1 K̃'_1
    let lhs = alg.mul(&alg.kt(0, 1), &alg.e(0));
    assert_eq!(lhs, alg.mul(&alg.e(0), &alg.kt(0, 1)).scale(&q(2)));
    let lhs = alg.mul(&alg.ktp(1, 1), &alg.e(0));
    assert_eq!(lhs, alg.mul(&alg.e(0), &alg.ktp(1, 1)).scale(&q(-d.dot(1, 0) as i32)));
    let lhs = alg.mul(&alg.kt(1, 1), &alg.f(0));
    assert_eq!(lhs, alg.mul(&alg.f(0), &alg.kt(1, 1)).scale(&q(-d.dot(1, 0) as i32)));
}

#[test]
fn distinct_e_f_commute() {
    let alg = DoubleAlgebra::new(&CartanDatum::a2());
    assert_eq!(alg.mul(&alg.f(1), &alg.e(0)), alg.mul(&alg.e(0), &alg.f(1)));
}

#[test]
fn derivation_on_two_letters() {
    let d = CartanDatum::b2();
    let x = HalfComb::word(&[0, 1], QScalar::one());
    let r = r_derivative(&d, 0, &x);
    assert_eq!(r, HalfComb::word(&[1], q(d.dot(0, 1) as i32)));
    let r = r_derivative(&d, 1, &x);
    assert_eq!(r, HalfComb::word(&[0], QScalar::one()));
}

#[test]
fn serre_relations_vanish() {
    for d in [CartanDatum::a2(), CartanDatum::b2(), CartanDatum::rank2(-3, -1).unwrap(), CartanDatum::a3_swapped()] {
        let alg = DoubleAlgebra::new(&d);
        let mut oracle = ZeroOracle::new(&d);
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                if i != j {
                    let s = alg.serre_element(i, j);
                    assert!(oracle.half_is_zero(&s), "S_{i}{j}");
                    assert!(oracle.dd_is_zero(&alg.from_half(&s, Side::F)));
                    // any product with a Serre element vanishes as well
                    let x = alg.mul(&alg.mul(&alg.f(j), &alg.from_half(&s, Side::E)), &alg.f(i));
                    assert!(!x.is_empty());
                    assert!(oracle.dd_is_zero(&x));
                }
            }
        }
    }
}

#[test]
fn nonzero_elements_detected() {
    let d = CartanDatum::a2();
    let alg = DoubleAlgebra::new(&d);
    let mut oracle = ZeroOracle::new(&d);
    let mut s = alg.serre_element(0, 1);
    s.add_term(vec![0, 0, 1], QScalar::one());
    assert!(!oracle.half_is_zero(&s));
    assert!(!oracle.half_is_zero(&HalfComb::word(&[0, 1], QScalar::one())));
    assert!(!alg.is_zero(&alg.e(0)));
    assert!(!alg.is_zero(&alg.kt(0, 1).sub(&alg.ktp(0, 1))));
    assert!(alg.is_zero(&alg.zero()));
}

/// Dimension of a weight space of the positive half, by counting ways to write the weight as a sum of positive roots.
fn kostant(roots: &[Vec<u8>], weight: &[u8]) -> usize {
    if weight.iter().all(|&w| w == 0) {
        return 1;
    }
    let Some((r, rest)) = roots.split_first() else { return 0 };
    let mut total = 0;
    let mut w = weight.to_vec();
    loop {
        total += kostant(rest, &w);
        if w.iter().zip(r).any(|(a, b)| a < b) {
            break;
        }
        for (a, b) in w.iter_mut().zip(r) {
            *a -= b;
        }
    }
    total
}

#[test]
fn weight_space_dimensions_match_root_counts() {
    let a2_roots = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    let b2_roots = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]];
    let g2_roots = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
    let cases = [(CartanDatum::a2(), a2_roots), (CartanDatum::b2(), b2_roots), (CartanDatum::rank2(-3, -1).unwrap(), g2_roots)];
    for (d, roots) in cases {
        for w0 in 0..=3u8 {
            for w1 in 0..=2u8 {
                let w = [w0, w1];
                assert_eq!(derivative_rank(&d, &w), kostant(&roots, &w), "weight {w:?} for {d}");
            }
        }
    }
    assert_eq!(derivative_rank(&CartanDatum::a2(), &[2, 1]), 2);
    assert_eq!(derivative_rank(&CartanDatum::b2(), &[2, 1]), 3);
}

#[test]
fn divided_power_relation() {
    let alg = DoubleAlgebra::new(&CartanDatum::b2());
    let x = alg.mul(&alg.e(1), &alg.divided_power(1, 2, Side::E));
    assert_eq!(x, alg.divided_power(1, 3, Side::E).scale(&qint(3, 2)));
}

#[test]
fn classical_layer_holds() {
    let r = verify_classical_suite(&ClassicalGrid::default(), &SuiteOptions::default());
    assert!(r.passed(), "{}", r.render_text());
    assert!(r.identities.len() == 4 && r.checked > 100);
}

#[test]
fn classical_mutation_is_caught() {
    let r = verify_classical_suite(&ClassicalGrid::default(), &SuiteOptions::mutated());
    assert!(r.identities["Lrec"].failed > 0);
}

#[test]
fn render_uses_twisted_cartan_names() {
    let alg = DoubleAlgebra::new(&CartanDatum::a2());
    let x = alg.mul(&alg.mul(&alg.e(0), &alg.ktp(1, -1)), &alg.f(0)).scale(&q(2));
    assert_eq!(alg.render(&x), "q^2 * E[1] Ktp[2]^-1 F[1]");
}

fn letter() -> impl Strategy<Value = DDElement> {
    (0usize..5, 0usize..2).prop_map(|(kind, i)| {
        let alg = DoubleAlgebra::new(&CartanDatum::b2());
        match kind {
            0 => alg.e(i),
            1 => alg.f(i),
            2 => alg.kt(i, 1),
            3 => alg.ktp(i, -1),
            _ => alg.scalar(QScalar::q_pow(i as i32 + 1)).add(&alg.e(i)),
        }
    })
}

fn small_element() -> impl Strategy<Value = DDElement> {
    prop::collection::vec(letter(), 1..4).prop_map(|v| {
        let alg = DoubleAlgebra::new(&CartanDatum::b2());
        alg.product(&v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn multiplication_is_associative(a in small_element(), b in small_element(), c in small_element()) {
        let alg = DoubleAlgebra::new(&CartanDatum::b2());
        let l = alg.mul(&alg.mul(&a, &b), &c);
        let r = alg.mul(&a, &alg.mul(&b, &c));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn multiplication_distributes(a in small_element(), b in small_element(), c in small_element()) {
        let alg = DoubleAlgebra::new(&CartanDatum::b2());
        prop_assert_eq!(alg.mul(&a, &b.add(&c)), alg.mul(&a, &b).add(&alg.mul(&a, &c)));
    }

    #[test]
    fn derivations_are_twisted(w1 in prop::collection::vec(0u8..2, 0..4), w2 in prop::collection::vec(0u8..2, 0..4), i in 0usize..2) {
        // r_i(x y) = x r_i(y) + q^{i . wt(y)} r_i(x) y
        let d = CartanDatum::b2();
        let x = HalfComb::word(&w1, QScalar::one());
        let y = HalfComb::word(&w2, QScalar::one());
        let wt: i64 = w2.iter().map(|&b| d.dot(i, b as usize)).sum();
        let lhs = r_derivative(&d, i, &x.mul(&y));
        let rhs = x.mul(&r_derivative(&d, i, &y)).add(&r_derivative(&d, i, &x).mul(&y).scale(&QScalar::q_pow(wt as i32)));
        prop_assert_eq!(lhs, rhs);
    }
}
