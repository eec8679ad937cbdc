use iquantum::cartan::*;
use proptest::prelude::*;

#[test]
fn b2_datum_reads_from_json() {
    let d = CartanDatum::from_json(r#"{"nodes":["1","2"],"cartan":[[2,-1],[-2,2]],"eps":[2,1],"tau":[1,2]}"#).unwrap();
    assert_eq!(d.rank(), 2);
    assert_eq!(d.dot(0, 1), -2);
    assert_eq!(d.node_class(0), NodeClass::Split);
    assert!(d.is_split());
}

#[test]
fn json_round_trip() {
    for d in [CartanDatum::a2(), CartanDatum::b2(), CartanDatum::a3_swapped()] {
        assert_eq!(CartanDatum::from_json(&d.to_json()).unwrap(), d);
    }
}

#[test]
fn swapped_nodes_are_classified() {
    let d = CartanDatum::a3_swapped();
    assert_eq!(d.node_class(0), NodeClass::Swapped);
    assert_eq!(d.node_class(1), NodeClass::Split);
    assert_eq!(d.tau(0), 2);
}

#[test]
fn invalid_data_report_every_violation() {
    let err = CartanDatum::from_json(r#"{"nodes":["1","2"],"cartan":[[2,1],[-1,3]],"eps":[1,1],"tau":[1,2]}"#).unwrap_err();
    let DatumError::Invalid(v) = err else { panic!("expected validation error") };
    assert!(v.len() >= 3, "{v:?}");
    assert!(CartanDatum::from_json(r#"{"nodes":["1","2"],"cartan":[[2,-1],[-1,2]],"eps":[1,1],"tau":[2,2]}"#).is_err());
    assert!(CartanDatum::from_json(r#"{"nodes":["1","2"],"cartan":[[2,-2],[-1,2]],"eps":[1,2],"tau":[2,1]}"#).is_err());
    assert!(CartanDatum::from_json(r#"{"nodes":["1","2"],"cartan":[[2,-1],[-1,2]],"eps":[1,1],"tau":[0,1]}"#).is_err());
    assert!(CartanDatum::from_json(r#"{"nodes":["1"],"cartan":[[2]],"eps":[1],"tau":[1],"black":[1]}"#).is_err());
    assert!(matches!(CartanDatum::from_json("{"), Err(DatumError::Json(_))));
}

#[test]
fn minimal_symmetrizers() {
    assert_eq!(minimal_symmetrizer(&[vec![2, -2], vec![-1, 2]]), Some(vec![1, 2]));
    assert_eq!(minimal_symmetrizer(&[vec![2, -3], vec![-1, 2]]), Some(vec![1, 3]));
    assert_eq!(minimal_symmetrizer(&[vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]]), Some(vec![2, 1, 1]));
    assert_eq!(minimal_symmetrizer(&[vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]), None);
    assert_eq!(minimal_symmetrizer(&[vec![2, 0], vec![0, 2]]), Some(vec![1, 1]));
}

proptest! {
    #[test]
    fn split_rank2_data_are_symmetric(a in 1i64..5, b in 1i64..5) {
        let d = CartanDatum::rank2(-a, -b).unwrap();
        prop_assert_eq!(d.dot(0, 1), d.dot(1, 0));
        prop_assert!(validate_datum(d.nodes(), d.matrix(), &[d.eps(0), d.eps(1)], &[0, 1]).is_empty());
    }
}
