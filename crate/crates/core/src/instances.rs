//! Seeded generators for random sets, subspaces and functions used by the
//! sweeps.

use num_rational::Ratio;
use rand::seq::index;
use rand::Rng;

use crate::fourier::DensityFn;
use crate::fpn::{FpSet, GroupCtx, Subspace};
use crate::setops;

/// A uniformly random subset of exactly `size` elements.
pub fn random_set<R: Rng>(ctx: GroupCtx, size: usize, rng: &mut R) -> FpSet {
    let size = size.min(ctx.order());
    let picks = index::sample(rng, ctx.order(), size);
    FpSet::from_indices(ctx, picks.iter()).expect("indices in range")
}

/// A random nonempty subset whose size is uniform in `1..=order`.
pub fn random_nonempty_set<R: Rng>(ctx: GroupCtx, rng: &mut R) -> FpSet {
    let size = rng.gen_range(1..=ctx.order() as u64) as usize;
    random_set(ctx, size, rng)
}

/// A random subspace of the given dimension, as the span of random vectors.
pub fn random_subspace<R: Rng>(ctx: GroupCtx, dim: usize, rng: &mut R) -> Subspace {
    let dim = dim.min(ctx.dim());
    let mut s = Subspace::zero(ctx);
    while s.dim() < dim {
        s.insert(rng.gen_range(0..ctx.order() as u64) as usize);
    }
    s
}

/// A random set with |A − A| ≤ max_doubling · |A|: a dense subset of a
/// random coset, sometimes with one stray point, kept only if the doubling
/// bound holds.
pub fn small_doubling_set<R: Rng>(ctx: GroupCtx, max_doubling: Ratio<u64>, rng: &mut R) -> FpSet {
    loop {
        let dim = rng.gen_range(1..=ctx.dim() as u64) as usize;
        let w = random_subspace(ctx, dim, rng);
        let shift = rng.gen_range(0..ctx.order() as u64) as usize;
        let elems = w.elements();
        let lo = elems.len().div_ceil(2);
        let size = rng.gen_range(lo as u64..=elems.len() as u64) as usize;
        let picks = index::sample(rng, elems.len(), size);
        let mut a = FpSet::empty(ctx);
        for i in picks.iter() {
            a.insert(ctx.add(elems[i], shift));
        }
        if rng.gen_bool(0.5) {
            a.insert(rng.gen_range(0..ctx.order() as u64) as usize);
        }
        let d = setops::doubling(&a).expect("nonempty");
        if d.k <= max_doubling {
            return a;
        }
    }
}

/// A function with independent uniform values in [0, 1).
pub fn random_fn<R: Rng>(ctx: GroupCtx, rng: &mut R) -> DensityFn {
    DensityFn::from_values(ctx, (0..ctx.order()).map(|_| rng.gen::<f64>()).collect())
        .expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn generators_respect_their_contracts() {
        let c = GroupCtx::new(3, 3).unwrap();
        let mut r = rng::stream(1, 0);
        assert_eq!(random_set(c, 10, &mut r).len(), 10);
        assert_eq!(random_subspace(c, 2, &mut r).dim(), 2);
        for _ in 0..20 {
            let a = small_doubling_set(c, Ratio::from_integer(2), &mut r);
            assert!(setops::doubling(&a).unwrap().k <= Ratio::from_integer(2));
        }
        assert!(!random_nonempty_set(c, &mut r).is_empty());
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let c = GroupCtx::new(2, 6).unwrap();
        let a = random_set(c, 17, &mut rng::stream(42, 3));
        let b = random_set(c, 17, &mut rng::stream(42, 3));
        assert_eq!(a, b);
    }
}
