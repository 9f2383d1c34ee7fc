use brickforge::builder::build_symbolic;
use brickforge::curve::{normalize_multidegree, CurveType, NormalizedInvariants};
use brickforge::scalar::q;
use brickforge::triple::{assemble_from, assemble_triple, degree_of_triple, Slot};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ints(m: &[Vec<brickforge::scalar::Q>]) -> Vec<Vec<i64>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
        .collect()
}

#[test]
fn tacnode_cycle_rank_three() {
    let inv = normalize_multidegree(CurveType::I2, 3, &[1, 1]).unwrap();
    let t = assemble_triple(&inv, &q(5)).unwrap();
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    assert_eq!(ints(t.mu(1, Slot::Mu0)), id);
    assert_eq!(ints(t.mu(2, Slot::Mu0)), id);
    assert_eq!(ints(t.mu(1, Slot::MuInf)), vec![vec![0, 0, 1], vec![0, 1, 0], vec![5, 0, 0]]);
    assert_eq!(ints(t.mu(2, Slot::MuInf)), vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
    assert_eq!(t.weight_split(1), (2, 1));
    assert_eq!(t.weight_split(2), (2, 1));
}

#[test]
fn tacnode_fiber_second_eps_vanishes() {
    let inv = normalize_multidegree(CurveType::III, 3, &[1, 1]).unwrap();
    let t = assemble_triple(&inv, &q(2)).unwrap();
    assert!(t.mu(2, Slot::MuEps).iter().flatten().all(Zero::is_zero));
    assert_eq!(ints(t.mu(1, Slot::MuEps)), vec![vec![2, 1, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    assert!(t.matrix(1, Slot::MuInf).is_none());
}

#[test]
fn rank_one_triples() {
    for curve in CurveType::ALL {
        let inv = NormalizedInvariants::from_reduced(curve, 1, &vec![0; curve.components()]).unwrap();
        let t = assemble_triple(&inv, &q(4)).unwrap();
        let slot = if curve.is_cycle() { Slot::MuInf } else { Slot::MuEps };
        assert_eq!(ints(t.mu(1, slot)), vec![vec![4]], "{curve:?}");
        assert_eq!(ints(t.mu(1, Slot::Mu0)), vec![vec![1]], "{curve:?}");
        assert_eq!(degree_of_triple(&t).unwrap(), inv);
    }
}

#[test]
fn degree_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut n = 0;
    while n < 200 {
        let curve = CurveType::ALL[rng.gen_range(0..6)];
        let r = rng.gen_range(1..=10u32);
        let d: Vec<i64> = (0..curve.components()).map(|_| rng.gen_range(-30..30)).collect();
        let inv = normalize_multidegree(curve, r, &d).unwrap();
        let Ok(form) = build_symbolic(&inv) else { continue };
        let t = assemble_from(&form, &q(3)).unwrap();
        assert_eq!(degree_of_triple(&t).unwrap(), inv);
        n += 1;
    }
}

#[test]
fn cycles_reject_zero() {
    let inv = normalize_multidegree(CurveType::I3, 2, &[1, 0, 0]).unwrap();
    assert!(assemble_triple(&inv, &q(0)).is_err());
}
