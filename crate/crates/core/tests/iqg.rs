use std::collections::BTreeMap;

use iquantum::cartan::CartanDatum;
use iquantum::drinfeld::ZeroOracle;
use iquantum::iqg::*;
use iquantum::qscalar::{qbinom, qint, Parity, QScalar};
use iquantum::SuiteOptions;
use proptest::prelude::*;

fn q(k: i32) -> QScalar {
    QScalar::q_pow(k)
}

#[test]
fn embedding_of_generators() {
    let d = CartanDatum::a3_swapped();
    let alg = IAlgebra::new(&d);
    let dd = alg.double();
    assert_eq!(alg.embed(&alg.b(0)), dd.f(0).add(&dd.mul(&dd.e(2), &dd.ktp(0, 1))));
    assert_eq!(alg.embed(&alg.b(1)), dd.f(1).add(&dd.mul(&dd.e(1), &dd.ktp(1, 1))));
    assert_eq!(alg.embed(&alg.k(0, 1)), dd.mul(&dd.kt(0, 1), &dd.ktp(2, 1)));
    assert_eq!(alg.embed(&alg.k(1, 1)), dd.mul(&dd.kt(1, 1), &dd.ktp(1, 1)));
}

#[test]
fn fixed_k_is_central() {
    let d = CartanDatum::b2();
    let alg = IAlgebra::new(&d);
    for i in 0..2 {
        for j in 0..2 {
            let c = alg.mul(&alg.k(i, 1), &alg.b(j)).sub(&alg.mul(&alg.b(j), &alg.k(i, 1)));
            assert!(c.is_structurally_zero());
            // and the same commutator computed in the double
            let dd = alg.double();
            let (ek, eb) = (alg.embed(&alg.k(i, 1)), alg.embed(&alg.b(j)));
            let comm = dd.mul(&ek, &eb).sub(&dd.mul(&eb, &ek));
            assert!(dd.is_zero(&comm));
        }
    }
}

#[test]
fn swapped_k_commutes_up_to_scalar() {
    let d = CartanDatum::a3_swapped();
    let alg = IAlgebra::new(&d);
    let dd = alg.double();
    for i in 0..3 {
        for j in 0..3 {
            let formal = alg.mul(&alg.k(i, 1), &alg.b(j));
            let doubled = dd.mul(&alg.embed(&alg.k(i, 1)), &alg.embed(&alg.b(j)));
            assert_eq!(alg.embed(&formal), doubled, "k{i} B{j}");
        }
    }
}

#[test]
fn idivided_power_examples() {
    let alg = IAlgebra::new(&CartanDatum::b2());
    for i in 0..2 {
        let eps = alg.datum().eps(i) as i32;
        for p in Parity::both() {
            assert_eq!(alg.idivided_power(i, 0, p), alg.one());
            assert_eq!(alg.idivided_power(i, 1, p), alg.b(i));
            assert!(alg.idivided_power(i, -3, p).is_structurally_zero());
        }
        let two = qint(2, eps).recip().unwrap();
        let expected = alg.pow(&alg.b(i), 2).sub(&alg.k(i, 1).scale(&q(eps))).scale(&two);
        assert_eq!(alg.idivided_power(i, 2, Parity::Odd), expected);
        assert_eq!(alg.idivided_power(i, 2, Parity::Even), alg.pow(&alg.b(i), 2).scale(&two));
    }
    let sw = IAlgebra::new(&CartanDatum::a3_swapped());
    let six = qint(3, 1) * qint(2, 1);
    assert_eq!(sw.idivided_power(0, 3, Parity::Odd), sw.pow(&sw.b(0), 3).scale(&six.recip().unwrap()));
}

#[test]
fn basis_change_tables() {
    let alg = IAlgebra::new(&CartanDatum::a2());
    let t0 = alg.idp_basis_change(0, 0, Parity::Odd, BasisDirection::IdpToPowers).unwrap();
    assert_eq!(t0, BTreeMap::from([(0, QScalar::one())]));
    let t2 = alg.idp_basis_change(0, 2, Parity::Odd, BasisDirection::IdpToPowers).unwrap();
    let inv2 = qint(2, 1).recip().unwrap();
    assert_eq!(t2, BTreeMap::from([(0, inv2.clone()), (1, -(&q(1) * &inv2))]));
    let back = alg.idp_basis_change(0, 2, Parity::Odd, BasisDirection::PowersToIdp).unwrap();
    // B^2 = [2] B^{(2)} + q k̃
    assert_eq!(back, BTreeMap::from([(0, qint(2, 1)), (1, q(1))]));
    let sw = IAlgebra::new(&CartanDatum::a3_swapped());
    assert_eq!(sw.idp_basis_change(0, 2, Parity::Odd, BasisDirection::IdpToPowers), Err(IqgError::NotFixed(0)));
}

#[test]
fn ytilde_examples() {
    let d = CartanDatum::a2();
    let alg = IAlgebra::new(&d);
    let yp = |n, m, p, e, primed| YParams { i: 0, j: 1, n, m, pbar: p, tbar: Parity::Odd, e, primed };
    // m = 0 with n a even is the middle divided power
    assert_eq!(ytilde(&alg, &yp(2, 0, Parity::Even, 1, false)).unwrap(), alg.idivided_power(1, 2, Parity::Odd));
    // m = 1 - n a is the Serre sandwich
    for p in Parity::both() {
        for e in [1, -1] {
            let y = ytilde(&alg, &yp(1, 2, p, e, false)).unwrap();
            assert_eq!(y, alg.sandwich(0, p, -1, 2, &alg.b(1)));
        }
    }
    assert!(ytilde(&alg, &yp(1, -7, Parity::Even, 1, false)).unwrap().is_structurally_zero());
    let bad = YParams { i: 0, j: 0, n: 1, m: 1, pbar: Parity::Even, tbar: Parity::Even, e: 1, primed: false };
    assert!(matches!(ytilde(&alg, &bad), Err(IqgError::Constraint(_))));
    let sw = IAlgebra::new(&CartanDatum::a3_swapped());
    let bad = YParams { i: 0, j: 1, ..bad };
    assert_eq!(ytilde(&sw, &bad), Err(IqgError::NotFixed(0)));
}

#[test]
fn low_range_status() {
    let d = CartanDatum::a2();
    let alg = IAlgebra::new(&d);
    let mut oracle = ZeroOracle::new(&d);
    for e in [1, -1] {
        for p in Parity::both() {
            let mk = |m| YParams { i: 0, j: 1, n: 1, m, pbar: p, tbar: Parity::Even, e, primed: false };
            assert!(!alg.is_zero_with(&mut oracle, &ytilde(&alg, &mk(1)).unwrap()));
            for m in 2..=4 {
                assert!(alg.is_zero_with(&mut oracle, &ytilde(&alg, &mk(m)).unwrap()));
            }
        }
    }
}

#[test]
fn sigma_examples() {
    let d = CartanDatum::a3_swapped();
    let alg = IAlgebra::new(&d);
    assert_eq!(alg.sigma(&alg.word(&[0, 1], QScalar::one())), alg.word(&[1, 2], QScalar::one()));
    assert_eq!(alg.sigma(&alg.k(0, 1)), alg.k(0, 1));
    assert_eq!(alg.sigma(&alg.k(1, 2)), alg.k(1, 2));
}

#[test]
fn sigma_maps_relations_to_relations() {
    let d = CartanDatum::a3_swapped();
    let alg = IAlgebra::new(&d);
    let mut oracle = ZeroOracle::new(&d);
    for (j, p) in [(0, Parity::Even), (2, Parity::Odd)] {
        let a = d.a(1, j);
        let rel = alg.sandwich(1, p, a, 1 - a, &alg.b(j));
        let image = alg.sigma(&rel);
        let partner = alg.sandwich(1, p + a, a, 1 - a, &alg.b(d.tau(j)));
        assert!(alg.is_zero_with(&mut oracle, &image));
        assert!(alg.is_zero_with(&mut oracle, &partner));
    }
    // a non-relation stays nonzero
    let x = alg.mul(&alg.b(1), &alg.b(0)).sub(&alg.mul(&alg.b(0), &alg.b(1)));
    assert!(!alg.is_zero_with(&mut oracle, &alg.sigma(&x)));
}

#[test]
fn braid_generator_images() {
    let d = CartanDatum::a2();
    let alg = IAlgebra::new(&d);
    for e in [1i64, -1] {
        let base = QScalar::monomial(-1, 1 + e as i32);
        for kind in [BraidKind::Prime, BraidKind::DoublePrime] {
            let bi = braid_image(&alg, 0, e, kind, 0, false, Parity::Even, Parity::Even).unwrap();
            let expected = IExpr::monomial(2, vec![0], vec![-1, 0], base.recip().unwrap());
            assert_eq!(bi, expected);
            let ki = braid_image(&alg, 0, e, kind, 0, true, Parity::Even, Parity::Even).unwrap();
            assert_eq!(ki, IExpr::monomial(2, vec![], vec![-1, 0], base.pow(-2).unwrap()));
            let kj = braid_image(&alg, 0, e, kind, 1, true, Parity::Even, Parity::Even).unwrap();
            assert_eq!(kj, IExpr::monomial(2, vec![], vec![1, 1], base.clone()));
            assert!(bi.has_negative_k());
        }
    }
    let split = IAlgebra::new(&CartanDatum::split(vec![vec![2, 0], vec![0, 2]]).unwrap());
    let bj = braid_image(&split, 0, 1, BraidKind::Prime, 1, false, Parity::Odd, Parity::Even).unwrap();
    assert_eq!(bj, split.b(1));
    let sw = IAlgebra::new(&CartanDatum::a3_swapped());
    assert!(braid_image(&sw, 0, 1, BraidKind::Prime, 1, false, Parity::Odd, Parity::Even).is_err());
}

#[test]
fn braid_candidates_invert_on_a2() {
    let d = CartanDatum::a2();
    let alg = IAlgebra::new(&d);
    let mut oracle = ZeroOracle::new(&d);
    let img = |kind| {
        let b = (0..2).map(|j| braid_image(&alg, 0, 1, kind, j, false, Parity::Even, Parity::Even).unwrap()).collect::<Vec<_>>();
        let k = (0..2).map(|j| braid_image(&alg, 0, 1, kind, j, true, Parity::Even, Parity::Even).unwrap()).collect::<Vec<_>>();
        (b, k)
    };
    let (b1, k1) = img(BraidKind::Prime);
    let (b2, k2) = img(BraidKind::DoublePrime);
    for j in 0..2 {
        let back = apply_substitution(&alg, &b1[j], &b2, &k2);
        assert!(alg.is_zero_with(&mut oracle, &back.sub(&alg.b(j))), "B{j}");
        let back = apply_substitution(&alg, &k1[j], &b2, &k2);
        assert_eq!(back, alg.k(j, 1));
    }
}

#[test]
fn specialize_examples() {
    let d = CartanDatum::a2();
    let alg = IAlgebra::new(&d);
    let table = BTreeMap::from([(0usize, q(-1))]);
    let x = alg.specialize(&alg.idivided_power(0, 2, Parity::Odd), &table).unwrap();
    let expected = alg.pow(&alg.b(0), 2).sub(&alg.one()).scale(&qint(2, 1).recip().unwrap());
    assert_eq!(x, expected);
    let dist = BTreeMap::from([(0usize, QScalar::monomial(-1, -2))]);
    assert_eq!(alg.specialize(&alg.k(0, 1), &dist).unwrap(), alg.scalar(QScalar::monomial(-1, -2)));
    let free = alg.word(&[0, 1, 0], q(3));
    assert_eq!(alg.specialize(&free, &dist).unwrap(), free);
    assert!(matches!(alg.specialize(&free, &BTreeMap::from([(0usize, QScalar::zero())])), Err(IqgError::Constraint(_))));
    assert_eq!(alg.specialize(&free, &BTreeMap::from([(5usize, q(1))])), Err(IqgError::BadNode(5)));

    let sw = IAlgebra::new(&CartanDatum::a3_swapped());
    let one_sided = BTreeMap::from([(0usize, q(1))]);
    assert!(matches!(sw.specialize(&sw.k(0, 1), &one_sided), Err(IqgError::Constraint(_))));
    let both = BTreeMap::from([(0usize, q(1)), (2usize, q(1))]);
    assert_eq!(sw.specialize(&sw.k(0, 1), &both).unwrap(), sw.scalar(q(1)));
}

#[test]
fn render_format() {
    let alg = IAlgebra::new(&CartanDatum::a2());
    let x = alg.mul(&alg.word(&[0, 1, 0], QScalar::one()), &alg.k(0, 2));
    assert_eq!(x.render(), "1 * B[1]B[2]B[1] k[1]^2");
    assert_eq!(alg.zero().render(), "0");
}

#[test]
fn suites_pass_on_small_grids() {
    let opts = SuiteOptions::default();
    let serre = SerreMinimalGrid { split: vec![(-1, 2)], t_max: 1, swapped_n_max: 1, mixed_n_max: 1, ..Default::default() };
    assert!(verify_serre_minimal(&serre, &opts).passed());
    let rec = RecursionGrid { a12: vec![-1], n_max: 1, m_extra: 1, e: vec![1, -1], ..Default::default() };
    assert!(verify_recursion(&rec, &opts).passed());
    let van = VanishingGrid { a12: vec![-1], n_max: 1, m_extra: 1, e: vec![1], report_low: true, ..Default::default() };
    let r = verify_vanishing(&van, &opts);
    assert!(r.passed());
    assert!(r.notes.iter().any(|n| n.status == "nonzero"));
    let sup = SupportGrid { b2r_max: 3, dp_max: 4, szz_m_max: 2, hos_n_max: 1, span_n_max: 3 };
    assert!(verify_support_lemmas(&sup, &opts).passed());
}

#[test]
fn suite_mutations_are_caught() {
    let opts = SuiteOptions::mutated();
    let serre = SerreMinimalGrid { split: vec![(-1, 1)], t_max: 0, swapped_n_max: 0, mixed_n_max: 0, ..Default::default() };
    assert!(!verify_serre_minimal(&serre, &opts).passed());
    let rec = RecursionGrid { a12: vec![-1], n_max: 1, m_extra: 0, e: vec![1], ..Default::default() };
    assert!(!verify_recursion(&rec, &opts).passed());
    let van = VanishingGrid { a12: vec![-1], n_max: 1, m_extra: 1, e: vec![1], report_low: false, ..Default::default() };
    assert!(!verify_vanishing(&van, &opts).passed());
    let sup = SupportGrid { b2r_max: 1, dp_max: 0, szz_m_max: 0, hos_n_max: 0, span_n_max: 0 };
    assert!(!verify_support_lemmas(&sup, &opts).passed());
}

#[test]
fn braid_report_never_gates() {
    let grid = BraidGrid { cases: vec![(0, 0, 0), (-1, -1, 0)], e: vec![1], pbar: vec![Parity::Even, Parity::Odd] };
    let ok = check_braid_experimental(&grid, &SuiteOptions::default());
    assert!(!ok.gating);
    assert!(ok.passed());
    let bad = check_braid_experimental(&grid, &SuiteOptions::mutated());
    assert!(!bad.gating);
    assert!(!bad.passed());
}

#[test]
fn b2r_leading_term() {
    // B^{(2)} B^{(r)} has leading coefficient [r+2 choose 2] on B^{r+2}
    let alg = IAlgebra::new(&CartanDatum::a2());
    for r in 0..4 {
        let x = alg.mul(&alg.idivided_power(0, 2, Parity::Even), &alg.idivided_power(0, r, Parity::Even));
        let lead = alg.idivided_power(0, r + 2, Parity::Even).scale(&qbinom(r + 2, 2, 1));
        let m = IMonomial { word: vec![0; (r + 2) as usize], kexp: vec![0, 0] };
        assert_eq!(x.coefficient(&m), lead.coefficient(&m));
    }
}

fn arb_iexpr(rank: usize) -> impl Strategy<Value = Vec<(Vec<u8>, Vec<i32>, i64, i32)>> {
    prop::collection::vec(
        (prop::collection::vec(0..rank as u8, 0..3), prop::collection::vec(0..2i32, rank), -2..3i64, -2..3i32),
        1..3,
    )
}

fn build(rank: usize, spec: &[(Vec<u8>, Vec<i32>, i64, i32)]) -> IExpr {
    let mut x = IExpr::zero(rank);
    for (w, k, c, e) in spec {
        x.add_assign(&IExpr::monomial(rank, w.clone(), k.clone(), QScalar::monomial(*c, *e)));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_is_an_involution(spec in arb_iexpr(3)) {
        let alg = IAlgebra::new(&CartanDatum::a3_swapped());
        let x = build(3, &spec);
        prop_assert_eq!(alg.sigma(&alg.sigma(&x)), x);
    }

    #[test]
    fn sigma_reverses_products(s1 in arb_iexpr(3), s2 in arb_iexpr(3)) {
        let alg = IAlgebra::new(&CartanDatum::a3_swapped());
        let (x, y) = (build(3, &s1), build(3, &s2));
        prop_assert_eq!(alg.sigma(&alg.mul(&x, &y)), alg.mul(&alg.sigma(&y), &alg.sigma(&x)));
    }

    #[test]
    fn embedding_is_multiplicative(s1 in arb_iexpr(3), s2 in arb_iexpr(3)) {
        let alg = IAlgebra::new(&CartanDatum::a3_swapped());
        let dd = alg.double();
        let (x, y) = (build(3, &s1), build(3, &s2));
        prop_assert_eq!(alg.embed(&alg.mul(&x, &y)), dd.mul(&alg.embed(&x), &alg.embed(&y)));
    }

    #[test]
    fn specialization_commutes_with_embedding(spec in arb_iexpr(2), c in -2..3i32) {
        let alg = IAlgebra::new(&CartanDatum::b2());
        let dd = alg.double();
        let x = build(2, &spec);
        let table = BTreeMap::from([(0usize, QScalar::monomial(-1, c)), (1usize, q(2))]);
        let lhs = dd.specialize_cartan(&alg.embed(&x), &table);
        let rhs = dd.specialize_cartan(&alg.embed(&alg.specialize(&x, &table).unwrap()), &table);
        prop_assert_eq!(lhs, rhs);
    }
}
