//! Sumsets, iterated sums kA − ℓA, doubling constants, Plünnecke margins and
//! Freiman-homomorphism checks.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Budget, LabError, Result};
use crate::fpn::{enumerate_subspaces, FpSet, GroupCtx, LinearMap, Subspace};

/// A + B.
pub fn sumset(a: &FpSet, b: &FpSet) -> Result<FpSet> {
    a.ctx().ensure_same(&b.ctx())?;
    let ctx = a.ctx();
    if a.is_empty() || b.is_empty() {
        return Ok(FpSet::empty(ctx));
    }
    let work = a.len() as u128 * b.len() as u128;
    if work > (ctx.order() as u128) * ctx.dim() as u128 {
        Ok(sumset_dense(a, b))
    } else {
        Ok(sumset_pairwise(a, b))
    }
}

/// A − B.
pub fn difference_set(a: &FpSet, b: &FpSet) -> Result<FpSet> {
    a.ctx().ensure_same(&b.ctx())?;
    sumset(a, &b.negate())
}

/// Θ(|A||B|) double loop.
pub fn sumset_pairwise(a: &FpSet, b: &FpSet) -> FpSet {
    let ctx = a.ctx();
    let mut out = FpSet::empty(ctx);
    let bs = b.to_vec();
    for x in a.iter() {
        for &y in &bs {
            out.insert(ctx.add(x, y));
        }
    }
    out
}

/// Union of translates. For p = 2 a translate is a word-level XOR
/// permutation of the bitset; for odd p every group element is tested for
/// membership, stopping at the first witness.
pub fn sumset_dense(a: &FpSet, b: &FpSet) -> FpSet {
    let ctx = a.ctx();
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if ctx.p() == 2 {
        let mut words = vec![0u64; big.words().len()];
        for t in small.iter() {
            xor_translate_into(big.words(), t, &mut words);
        }
        return FpSet::from_words(ctx, words);
    }
    let shifts: Vec<usize> = small.iter().map(|t| ctx.neg(t)).collect();
    let hits = crate::par::map_range(ctx.order(), |x| {
        shifts.iter().any(|&s| big.contains(ctx.add(x, s)))
    });
    FpSet::from_indices(ctx, hits.iter().enumerate().filter(|h| *h.1).map(|h| h.0))
        .expect("indices in range")
}

// out[i] |= src[i ^ t] over bit positions.
fn xor_translate_into(src: &[u64], t: usize, out: &mut [u64]) {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    let (hi, lo) = (t >> 6, t & 63);
    for (w, o) in out.iter_mut().enumerate() {
        let mut x = src[w ^ hi];
        for (k, &m) in MASKS.iter().enumerate() {
            if lo >> k & 1 == 1 {
                let s = 1 << k;
                x = ((x & m) << s) | ((x >> s) & m);
            }
        }
        *o |= x;
    }
}

/// kA = A + ... + A (k copies); 0A = {0}.
pub fn multiple(a: &FpSet, k: usize) -> Result<FpSet> {
    let mut acc = FpSet::singleton(a.ctx(), 0);
    for _ in 0..k {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// kA − ℓA.
pub fn iterated(a: &FpSet, k: usize, l: usize) -> Result<FpSet> {
    if k + l == 0 {
        return Err(LabError::InvalidArgument(
            "iterated sumset needs k + l >= 1".into(),
        ));
    }
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    difference_set(&multiple(a, k)?, &multiple(a, l)?)
}

/// Whether A is a coset v + W of a subgroup W.
pub fn is_coset(a: &FpSet) -> bool {
    let Some(a0) = a.min() else {
        return false;
    };
    let shifted = a.translate(a.ctx().neg(a0));
    Subspace::span(&shifted).size() == a.len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingReport {
    pub size_a: usize,
    pub size_diff: usize,
    /// |A − A| / |A|.
    pub k: Ratio<u64>,
    pub is_coset: bool,
}

pub fn doubling(a: &FpSet) -> Result<DoublingReport> {
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let diff = difference_set(a, a)?;
    Ok(DoublingReport {
        size_a: a.len(),
        size_diff: diff.len(),
        k: Ratio::new(diff.len() as u64, a.len() as u64),
        is_coset: is_coset(a),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlunneckeEntry {
    pub k: usize,
    pub l: usize,
    pub size: usize,
    /// K^{k+ℓ}|A|.
    pub bound: BigRational,
    /// bound − |kA − ℓA|; negative would be a violation.
    pub margin: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlunneckeReport {
    pub doubling: DoublingReport,
    pub kmax: usize,
    pub entries: Vec<PlunneckeEntry>,
    /// (k, ℓ) pairs with |kA − ℓA| > K^{k+ℓ}|A|.
    pub violations: Vec<(usize, usize)>,
}

impl PlunneckeReport {
    pub fn min_margin(&self) -> Option<&BigRational> {
        self.entries.iter().map(|e| &e.margin).min()
    }
}

/// Checks |kA − ℓA| ≤ K^{k+ℓ}|A| for all k, ℓ ≥ 0 with 1 ≤ k + ℓ ≤ kmax,
/// where K = |A − A|/|A|, in exact rational arithmetic.
pub fn plunnecke_check(a: &FpSet, kmax: usize) -> Result<PlunneckeReport> {
    if kmax == 0 {
        return Err(LabError::InvalidArgument("kmax must be at least 1".into()));
    }
    let dbl = doubling(a)?;
    let mut multiples = Vec::with_capacity(kmax + 1);
    multiples.push(FpSet::singleton(a.ctx(), 0));
    for k in 1..=kmax {
        let next = sumset(&multiples[k - 1], a)?;
        multiples.push(next);
    }
    let kk = BigRational::new(
        BigInt::from(dbl.size_diff),
        BigInt::from(dbl.size_a),
    );
    let size_a = BigRational::from_integer(BigInt::from(dbl.size_a));
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for total in 1..=kmax {
        let mut pow = BigRational::one();
        for _ in 0..total {
            pow *= &kk;
        }
        let bound = &pow * &size_a;
        for k in (0..=total).rev() {
            let l = total - k;
            let size = difference_set(&multiples[k], &multiples[l])?.len();
            let margin = &bound - BigRational::from_integer(BigInt::from(size));
            if margin < BigRational::zero() {
                violations.push((k, l));
            }
            entries.push(PlunneckeEntry {
                k,
                l,
                size,
                bound: bound.clone(),
                margin,
            });
        }
    }
    Ok(PlunneckeReport {
        doubling: dbl,
        kmax,
        entries,
        violations,
    })
}

/// Two distinct elements of one stratum kA − ℓA with the same image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreimanWitness {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreimanVerdict {
    pub is_hom: bool,
    pub order: usize,
    pub witness: Option<FreimanWitness>,
}

fn image_index(phi: &LinearMap, ctx: &GroupCtx, idx: usize, x: &mut [u32], y: &mut [u32]) -> usize {
    ctx.digits_into(idx, x);
    phi.apply_digits(x, y);
    let p = phi.p() as usize;
    y.iter().rev().fold(0usize, |acc, &d| acc * p + d as usize)
}

fn check_map(phi: &LinearMap, ctx: &GroupCtx) -> Result<()> {
    if phi.p() != ctx.p() {
        return Err(LabError::InvalidArgument(format!(
            "map over F_{} applied to F_{}^n",
            phi.p(),
            ctx.p()
        )));
    }
    if phi.cols() != ctx.dim() {
        return Err(LabError::DimensionMismatch {
            expected: ctx.dim(),
            got: phi.cols(),
        });
    }
    if phi.rows() > ctx.dim() {
        return Err(LabError::DimensionMismatch {
            expected: ctx.dim(),
            got: phi.rows(),
        });
    }
    Ok(())
}

/// Whether `phi` is injective on every stratum kA − ℓA with k + ℓ = t.
/// Strata are scanned with k = 0, 1, ..., t and the first collision found is
/// returned as the witness.
pub fn freiman_check(phi: &LinearMap, a: &FpSet, t: usize) -> Result<FreimanVerdict> {
    let ctx = a.ctx();
    check_map(phi, &ctx)?;
    if t == 0 {
        return Err(LabError::InvalidArgument("Freiman order must be >= 1".into()));
    }
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let multiples: Vec<FpSet> = (0..=t).map(|k| multiple(a, k)).collect::<Result<_>>()?;
    let codomain = (phi.p() as usize).pow(phi.rows() as u32);
    let mut x = vec![0u32; ctx.dim()];
    let mut y = vec![0u32; phi.rows()];
    for k in 0..=t {
        let l = t - k;
        let stratum = difference_set(&multiples[k], &multiples[l])?;
        let mut seen: Vec<Option<usize>> = vec![None; codomain];
        for e in stratum.iter() {
            let img = image_index(phi, &ctx, e, &mut x, &mut y);
            if let Some(prev) = seen[img] {
                return Ok(FreimanVerdict {
                    is_hom: false,
                    order: t,
                    witness: Some(FreimanWitness { a: prev, b: e, k, l }),
                });
            }
            seen[img] = Some(e);
        }
    }
    Ok(FreimanVerdict {
        is_hom: true,
        order: t,
        witness: None,
    })
}

/// Largest group order for which [`min_freiman_map`] searches exhaustively.
pub const MIN_FREIMAN_MAX_ORDER: usize = 64;

/// A Freiman homomorphism of order `t` of A into F_p^m with m minimal.
///
/// A linear map is injective on a stratum S exactly when its kernel meets
/// S − S only in 0, so the search runs over kernels: subspaces of
/// decreasing dimension avoiding every nonzero stratum difference. The
/// returned map has the annihilator basis of the kernel as its rows.
pub fn min_freiman_map(a: &FpSet, t: usize, budget: Budget) -> Result<LinearMap> {
    let ctx = a.ctx();
    if ctx.order() > MIN_FREIMAN_MAX_ORDER {
        return Err(LabError::InvalidArgument(format!(
            "minimal Freiman search is limited to p^n <= {MIN_FREIMAN_MAX_ORDER}"
        )));
    }
    if t == 0 {
        return Err(LabError::InvalidArgument("Freiman order must be >= 1".into()));
    }
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let multiples: Vec<FpSet> = (0..=t).map(|k| multiple(a, k)).collect::<Result<_>>()?;
    let mut forbidden = FpSet::empty(ctx);
    for k in 0..=t {
        let s = difference_set(&multiples[k], &multiples[t - k])?;
        forbidden = forbidden.union(&difference_set(&s, &s)?)?;
    }
    forbidden.remove(0);
    for kernel_dim in (0..=ctx.dim()).rev() {
        for kernel in enumerate_subspaces(ctx, kernel_dim, budget)? {
            if kernel.elements().iter().all(|&e| !forbidden.contains(e)) {
                let rows = kernel.orthogonal_complement().rows().to_vec();
                return LinearMap::from_rows(ctx.p(), ctx.dim(), &rows);
            }
        }
    }
    unreachable!("the zero kernel always qualifies")
}

/// Whether φ(F_p · (tA − tA)) is all of F_p^m.
pub fn freiman_image_spans(phi: &LinearMap, a: &FpSet, t: usize) -> Result<bool> {
    let ctx = a.ctx();
    check_map(phi, &ctx)?;
    let s = iterated(a, t, t)?;
    let codomain = (phi.p() as usize).pow(phi.rows() as u32);
    let mut hit = vec![false; codomain];
    let mut x = vec![0u32; ctx.dim()];
    let mut y = vec![0u32; phi.rows()];
    for e in s.iter() {
        for c in 0..ctx.p() {
            let img = image_index(phi, &ctx, ctx.scale(c, e), &mut x, &mut y);
            hit[img] = true;
        }
    }
    Ok(hit.into_iter().all(|h| h))
}

/// φ(A) as a subset of F_p^m (m = rows of φ, at least 1).
pub fn image_set(phi: &LinearMap, a: &FpSet) -> Result<FpSet> {
    let ctx = a.ctx();
    check_map(phi, &ctx)?;
    let target = GroupCtx::new(phi.p() as u64, phi.rows() as u32)?;
    let mut out = FpSet::empty(target);
    for e in a.iter() {
        out.insert(phi.apply(&ctx, &target, e));
    }
    Ok(out)
}
