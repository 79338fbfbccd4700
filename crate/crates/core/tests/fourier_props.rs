use additive_lab::fourier::{self, DensityFn};
use additive_lab::GroupCtx;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = GroupCtx> {
    prop_oneof![
        Just((2u64, 6u32)),
        Just((3, 4)),
        Just((5, 2)),
        Just((7, 2)),
        Just((11, 1)),
    ]
    .prop_map(|(p, n)| GroupCtx::new(p, n).unwrap())
}

fn func() -> impl Strategy<Value = DensityFn> {
    group().prop_flat_map(|c| {
        proptest::collection::vec(-1.0f64..1.0, c.order())
            .prop_map(move |v| DensityFn::from_values(c, v).unwrap())
    })
}

fn func_pair() -> impl Strategy<Value = (DensityFn, DensityFn)> {
    group().prop_flat_map(|c| {
        let one = proptest::collection::vec(0.0f64..1.0, c.order());
        (one.clone(), one).prop_map(move |(a, b)| {
            (DensityFn::from_values(c, a).unwrap(), DensityFn::from_values(c, b).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_roundtrip(h in func()) {
        let back = fourier::inverse_real(&fourier::transform(&h));
        for (a, b) in back.values().iter().zip(h.values()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn parseval(h in func()) {
        let energy = fourier::transform(&h).energy();
        let mean_sq = h.values().iter().map(|v| v * v).sum::<f64>() / h.values().len() as f64;
        prop_assert!((energy - mean_sq).abs() < 1e-10);
    }

    #[test]
    fn convolution_theorem((f, g) in func_pair()) {
        let lhs = fourier::transform(&fourier::convolve(&f, &g).unwrap());
        let rhs = fourier::transform(&f).pointwise_mul(&fourier::transform(&g)).unwrap();
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn fast_and_direct_transforms_agree(h in func()) {
        let fast = fourier::transform(&h);
        let slow = fourier::transform_direct(&h);
        for (a, b) in fast.coeffs().iter().zip(slow.coeffs()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}
