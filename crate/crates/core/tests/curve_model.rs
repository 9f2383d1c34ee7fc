use brickforge::curve::{coprimality_check, normalize_multidegree, recover_multidegree, CurveType, NormalizedInvariants};
use brickforge::Error;
use proptest::prelude::*;

#[test]
fn splits_the_worked_example() {
    let inv = normalize_multidegree(CurveType::I2, 9, &[3, 2]).unwrap();
    assert_eq!(inv.dbar, vec![3, 2]);
    assert_eq!(inv.twists, vec![0, 0]);
    assert_eq!(inv.dbar_total(), 5);
    assert!(coprimality_check(&inv));
}

#[test]
fn splits_by_euclidean_division() {
    let inv = normalize_multidegree(CurveType::I3, 3, &[4, -2, 1]).unwrap();
    assert_eq!(inv.dbar, vec![1, 1, 1]);
    assert_eq!(inv.twists, vec![1, -1, 0]);
    assert_eq!(recover_multidegree(&inv), vec![4, -2, 1]);

    let trivial = normalize_multidegree(CurveType::I1, 1, &[0]).unwrap();
    assert_eq!((trivial.dbar, trivial.twists), (vec![0], vec![0]));
}

#[test]
fn recovers_twisted_degrees() {
    let inv = normalize_multidegree(CurveType::II, 2, &[10]).unwrap();
    assert_eq!((inv.dbar.clone(), inv.twists.clone()), (vec![0], vec![5]));
    assert_eq!(recover_multidegree(&inv), vec![10]);
}

#[test]
fn coprimality_uses_total_degree() {
    assert!(!coprimality_check(&normalize_multidegree(CurveType::I1, 2, &[0]).unwrap()));
    assert!(!coprimality_check(&normalize_multidegree(CurveType::I3, 6, &[2, 1, 1]).unwrap()));
}

#[test]
fn rejects_malformed_input() {
    assert!(matches!(
        normalize_multidegree(CurveType::I2, 3, &[1]),
        Err(Error::DimensionMismatch { .. })
    ));
    assert!(matches!(normalize_multidegree(CurveType::I1, 0, &[1]), Err(Error::InvalidRank)));
    assert!(matches!("I4".parse::<CurveType>(), Err(Error::UnknownCurve(_))));
}

proptest! {
    #[test]
    fn normalization_round_trips(c in 0..6usize, r in 1..20u32, d in proptest::collection::vec(-50i64..50, 4)) {
        let curve = CurveType::ALL[c];
        let d = &d[..curve.components()];
        let inv = normalize_multidegree(curve, r, d).unwrap();
        prop_assert_eq!(recover_multidegree(&inv), d.to_vec());
        prop_assert!(inv.dbar.iter().all(|&x| x < r));
        let reduced = NormalizedInvariants::from_reduced(curve, r, &inv.dbar).unwrap();
        prop_assert_eq!(coprimality_check(&reduced), coprimality_check(&inv));
    }
}
