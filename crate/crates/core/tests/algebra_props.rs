use additive_lab::fpn::enumerate_subspaces;
use additive_lab::setops::{self, sumset_dense, sumset_pairwise};
use additive_lab::{Budget, FpSet, GroupCtx, Subspace};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = GroupCtx> {
    prop_oneof![
        Just((2u64, 3u32)),
        Just((2, 5)),
        Just((3, 2)),
        Just((3, 3)),
        Just((5, 2)),
        Just((7, 1)),
    ]
    .prop_map(|(p, n)| GroupCtx::new(p, n).unwrap())
}

fn set_in(ctx: GroupCtx) -> impl Strategy<Value = FpSet> {
    proptest::collection::vec(any::<bool>(), ctx.order())
        .prop_map(move |bits| FpSet::from_fn(ctx, |i| bits[i]))
}

fn group_and_two_sets() -> impl Strategy<Value = (FpSet, FpSet)> {
    group().prop_flat_map(|c| (set_in(c), set_in(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sumset_paths_agree((a, b) in group_and_two_sets()) {
        let s = sumset_pairwise(&a, &b);
        prop_assert_eq!(&s, &sumset_dense(&a, &b));
        prop_assert_eq!(&s, &setops::sumset(&b, &a).unwrap());
        if !a.is_empty() && !b.is_empty() {
            prop_assert!(s.len() >= a.len().max(b.len()));
        }
    }

    #[test]
    fn difference_set_is_symmetric_and_holds_zero(a in group().prop_flat_map(set_in)) {
        prop_assume!(!a.is_empty());
        let d = setops::difference_set(&a, &a).unwrap();
        prop_assert!(d.contains(0));
        prop_assert_eq!(d.negate(), d);
    }

    #[test]
    fn unit_doubling_iff_coset(a in group().prop_flat_map(set_in)) {
        prop_assume!(!a.is_empty());
        let rep = setops::doubling(&a).unwrap();
        let x0 = a.min().unwrap();
        let shifted = a.translate(a.ctx().neg(x0));
        let coset = Subspace::span(&shifted).size() == a.len();
        prop_assert_eq!(rep.size_diff == rep.size_a, coset);
        prop_assert_eq!(rep.is_coset, coset);
    }

    #[test]
    fn span_and_double_annihilator(a in group().prop_flat_map(set_in)) {
        let span = Subspace::span(&a);
        prop_assert!(a.is_subset(&span.to_set()));
        prop_assert_eq!(Subspace::annihilator(&span.orthogonal_complement().to_set()), span.clone());
        prop_assert_eq!(span.dim() + span.orthogonal_complement().dim(), a.ctx().dim());
    }

    #[test]
    fn coset_representatives_are_canonical(a in group().prop_flat_map(set_in), x in 0usize..4096) {
        let ctx = a.ctx();
        let v = Subspace::span(&a);
        let x = x % ctx.order();
        let r = v.coset_rep(x);
        prop_assert_eq!(v.coset_rep(r), r);
        prop_assert!(v.contains(ctx.sub(x, r)));
        for w in v.elements() {
            prop_assert_eq!(v.coset_rep(ctx.add(x, w)), r);
        }
    }
}

#[test]
fn subspace_counts_match_gaussian_binomials() {
    for (p, n) in [(2u64, 4u32), (3, 3), (5, 2)] {
        let c = GroupCtx::new(p, n).unwrap();
        for k in 0..=n as usize {
            let all: Vec<Subspace> = enumerate_subspaces(c, k, Budget::DEFAULT).unwrap().collect();
            let expected = additive_lab::fpn::gaussian_binomial(n, k as u32, p as u32);
            assert_eq!(all.len() as u128, expected);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
