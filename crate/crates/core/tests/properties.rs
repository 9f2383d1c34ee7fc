use brickforge::builder::{build_symbolic, forward_reduce, inverse_step, path_for, reduced_parameter};
use brickforge::curve::{CurveType, NormalizedInvariants};
use brickforge::matrix::{CellMask, ParamMatrix};
use brickforge::scalar::{q, q_frac, ParamScalar};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = NormalizedInvariants> {
    (0..6usize, 1..=10u32)
        .prop_flat_map(|(c, r)| {
            let curve = CurveType::ALL[c];
            (Just(curve), Just(r), proptest::collection::vec(0..r, curve.components()))
        })
        .prop_map(|(curve, r, d)| NormalizedInvariants::from_reduced(curve, r, &d).unwrap())
        .prop_filter("coprime", brickforge::curve::coprimality_check)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inverse_then_forward_is_identity(inv in family(), seed in proptest::collection::vec((0..3u8, -3i64..4, -1i64..2), 400), k in 0usize..64) {
        let path = path_for(&inv).unwrap();
        prop_assume!(!path.steps.is_empty());
        let states = path.states().unwrap();
        let k = k % path.steps.len();
        let target = &states[k + 1];
        let sizes = target.sizes.iter().map(|&x| x as usize).collect();
        let mut m = ParamMatrix::zeros(inv.curve, target.state, target.shape.clone(), sizes);
        let d = m.dim();
        let mut cells = seed.iter().cycle();
        for i in 0..d {
            for j in 0..d {
                let &(keep, c0, c1) = cells.next().unwrap();
                if m.mask_at(i, j) == CellMask::Free && keep != 0 {
                    *m.at_mut(i, j) = ParamScalar::linear(q(c0), q(c1));
                }
            }
        }
        let grown = inverse_step(&m, &states[k], &path.steps[k]).unwrap();
        prop_assert_eq!(forward_reduce(&grown, &states[k], &path.steps[k]).unwrap(), m);
    }

    #[test]
    fn canonical_matrices_reduce_to_their_parameter(inv in family(), n in -20i64..20, d in 1i64..6) {
        let lambda = q_frac(n, d);
        prop_assume!(!(inv.curve.is_cycle() && n == 0));
        let form = build_symbolic(&inv).unwrap();
        let back = reduced_parameter(&form.matrix.eval(&lambda), &form.path).unwrap();
        prop_assert_eq!(back, ParamScalar::constant(lambda));
        prop_assert_eq!(reduced_parameter(&form.matrix, &form.path).unwrap(), ParamScalar::lambda());
    }
}
