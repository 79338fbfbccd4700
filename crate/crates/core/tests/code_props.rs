use additive_lab::nmc::{
    decode, encode, family_distance, joint_dist, AffineEvasiveSet, Codeword, Decoded, TamperPair,
};
use additive_lab::{rng, Budget, GroupCtx};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// decode ∘ encode is the identity, and decoding every codeword recovers
/// exactly the fibers that encode draws from.
#[test]
fn decode_inverts_encode_exhaustively() {
    for (p, n) in [(2u64, 3u32), (3, 1), (3, 2), (3, 3), (5, 2), (7, 1)] {
        let c = GroupCtx::new(p, n).unwrap();
        let all: Vec<u32> = (0..p as u32).collect();
        let s = AffineEvasiveSet::new(p as u32, &all).unwrap();
        let mut fiber = vec![0u64; p as usize];
        for l in 0..c.order() {
            for r in 0..c.order() {
                match decode(&Codeword { l: c.vec(l), r: c.vec(r) }, &s) {
                    Decoded::Message(m) => fiber[m] += 1,
                    Decoded::Bottom => unreachable!(),
                }
            }
        }
        let nn = c.order() as u64;
        assert_eq!(fiber[0], nn + (nn - 1) * nn / p);
        let mut g = rng::stream(p ^ n as u64, 0);
        for m in 0..s.len() {
            assert_eq!(fiber[m], if m == 0 { fiber[0] } else { (nn - 1) * nn / p });
            for _ in 0..20 {
                let w = encode(m, &s, c, &mut g).unwrap();
                assert_eq!(decode(&w, &s), Decoded::Message(m));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn joint_distributions_are_exact_and_distances_certified(seed in any::<u64>(), which in 0usize..3) {
        let (p, n) = [(2u64, 2u32), (3, 1), (3, 2)][which];
        let c = GroupCtx::new(p, n).unwrap();
        let fp = TamperPair::random(c, &mut rng::stream(seed, 1));
        let d = joint_dist(&fp, Budget::DEFAULT).unwrap();
        let total = d.pmf().iter().fold(BigRational::zero(), |a, v| a + v);
        prop_assert_eq!(total, BigRational::one());
        let r = family_distance(&d).unwrap();
        prop_assert!(r.certified());
        prop_assert!(r.distance >= BigRational::zero() && r.distance <= BigRational::one());
    }
}
