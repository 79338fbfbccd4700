use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::code::{Codeword, Decoded};
use super::AffineEvasiveSet;
use crate::error::{Budget, LabError, Result};
use crate::fpn::{GroupCtx, LinearMap};
use crate::par;

/// Largest number of (L, R) pairs any exact enumeration will visit.
pub const JOINT_MAX_PAIRS: u64 = 1 << 30;

/// Independent tampering functions f on L and g on R, as total tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TamperPair {
    ctx: GroupCtx,
    f: Vec<usize>,
    g: Vec<usize>,
}

impl TamperPair {
    pub fn from_tables(ctx: GroupCtx, f: Vec<usize>, g: Vec<usize>) -> Result<Self> {
        for t in [&f, &g] {
            if t.len() != ctx.order() {
                return Err(LabError::DimensionMismatch {
                    expected: ctx.order(),
                    got: t.len(),
                });
            }
            if t.iter().any(|&v| v >= ctx.order()) {
                return Err(LabError::InvalidArgument("tamper table entry out of range".into()));
            }
        }
        Ok(TamperPair { ctx, f, g })
    }

    pub fn identity(ctx: GroupCtx) -> Self {
        let id: Vec<usize> = (0..ctx.order()).collect();
        TamperPair { ctx, f: id.clone(), g: id }
    }

    pub fn constant(ctx: GroupCtx, c1: usize, c2: usize) -> Result<Self> {
        TamperPair::from_tables(ctx, vec![c1; ctx.order()], vec![c2; ctx.order()])
    }

    /// f(x) = M₁x + c₁, g(x) = M₂x + c₂.
    pub fn affine(ctx: GroupCtx, m1: &LinearMap, c1: usize, m2: &LinearMap, c2: usize) -> Result<Self> {
        m1.check_shape(&ctx, &ctx)?;
        m2.check_shape(&ctx, &ctx)?;
        let f = m1.table(&ctx, &ctx).into_iter().map(|v| ctx.add(v, c1)).collect();
        let g = m2.table(&ctx, &ctx).into_iter().map(|v| ctx.add(v, c2)).collect();
        TamperPair::from_tables(ctx, f, g)
    }

    /// Coordinates of L and R are permuted: f(x)_i = x_{σ(i)}, g(x)_i = x_{τ(i)}.
    pub fn permutation(ctx: GroupCtx, sigma: &[usize], tau: &[usize]) -> Result<Self> {
        let table = |perm: &[usize]| -> Result<Vec<usize>> {
            let mut seen = vec![false; ctx.dim()];
            if perm.len() != ctx.dim() || perm.iter().any(|&i| i >= ctx.dim() || std::mem::replace(&mut seen[i], true)) {
                return Err(LabError::InvalidArgument("not a permutation of the coordinates".into()));
            }
            Ok((0..ctx.order())
                .map(|x| {
                    let d = ctx.digits(x);
                    let out: Vec<u32> = perm.iter().map(|&i| d[i]).collect();
                    ctx.index_of(&out)
                })
                .collect())
        };
        TamperPair::from_tables(ctx, table(sigma)?, table(tau)?)
    }

    /// Both halves apply a map F_p → F_p to every coordinate.
    pub fn coordinatewise(ctx: GroupCtx, h1: &[u32], h2: &[u32]) -> Result<Self> {
        let p = ctx.p() as usize;
        if h1.len() != p || h2.len() != p || h1.iter().chain(h2).any(|&v| v as usize >= p) {
            return Err(LabError::InvalidArgument("coordinate maps must be tables F_p → F_p".into()));
        }
        let lift = |h: &[u32]| -> Vec<usize> {
            (0..ctx.order())
                .map(|x| {
                    let d: Vec<u32> = ctx.digits(x).iter().map(|&v| h[v as usize]).collect();
                    ctx.index_of(&d)
                })
                .collect()
        };
        TamperPair::from_tables(ctx, lift(h1), lift(h2))
    }

    /// Independent uniformly random tables.
    pub fn random<R: Rng>(ctx: GroupCtx, rng: &mut R) -> Self {
        let mut t = || (0..ctx.order()).map(|_| rng.gen_range(0..ctx.order())).collect::<Vec<_>>();
        let f = t();
        let g = t();
        TamperPair { ctx, f, g }
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn apply(&self, c: &Codeword) -> Codeword {
        Codeword {
            l: self.ctx.vec(self.f[c.l.index()]),
            r: self.ctx.vec(self.g[c.r.index()]),
        }
    }
}

fn check_pairs(ctx: GroupCtx, budget: Budget) -> Result<()> {
    let pairs = (ctx.order() as u128).pow(2);
    Budget(JOINT_MAX_PAIRS).check("pair enumeration", pairs)?;
    budget.check("pair enumeration", pairs)
}

/// Exact distribution of (⟨L, R⟩, ⟨f(L), g(R)⟩) over uniform (L, R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDist {
    p: u32,
    pmf: Vec<BigRational>,
}

impl JointDist {
    /// `pmf[u * p + y]` is the weight of (u, y); weights must be nonnegative
    /// and sum to exactly 1.
    pub fn from_pmf(p: u32, pmf: Vec<BigRational>) -> Result<Self> {
        if pmf.len() != (p * p) as usize {
            return Err(LabError::DimensionMismatch {
                expected: (p * p) as usize,
                got: pmf.len(),
            });
        }
        let total = pmf.iter().fold(BigRational::zero(), |a, v| a + v);
        if pmf.iter().any(|v| v.is_negative()) || total != BigRational::from_integer(1.into()) {
            return Err(LabError::InvalidArgument("not a probability distribution".into()));
        }
        Ok(JointDist { p, pmf })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn pmf(&self) -> &[BigRational] {
        &self.pmf
    }

    pub fn at(&self, u: u32, y: u32) -> &BigRational {
        &self.pmf[(u * self.p + y) as usize]
    }
}

pub fn joint_dist(fp: &TamperPair, budget: Budget) -> Result<JointDist> {
    let ctx = fp.ctx;
    check_pairs(ctx, budget)?;
    let p = ctx.p() as usize;
    let nn = ctx.order();
    let counts = par::histogram(nn, p * p, |l, h| {
        let fl = fp.f[l];
        for r in 0..nn {
            let s = ctx.inner(l, r) as usize;
            let y = ctx.inner(fl, fp.g[r]) as usize;
            h[s * p + y] += 1;
        }
    });
    let den = BigInt::from(nn as u64).pow(2);
    let pmf = counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), den.clone()))
        .collect();
    JointDist::from_pmf(ctx.p(), pmf)
}

/// The distribution of decode(f(L), g(R)) given that (L, R) encodes m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageOutcome {
    pub m: usize,
    pub fiber_size: u64,
    /// counts[k] for the outcome "message k", counts[|S|] for Bottom.
    pub counts: Vec<u64>,
}

impl MessageOutcome {
    pub fn probability(&self, outcome: Decoded) -> BigRational {
        let k = match outcome {
            Decoded::Message(k) => k,
            Decoded::Bottom => self.counts.len() - 1,
        };
        BigRational::new(BigInt::from(self.counts[k]), BigInt::from(self.fiber_size))
    }
}

pub fn tamper_experiment(fp: &TamperPair, s: &AffineEvasiveSet, budget: Budget) -> Result<Vec<MessageOutcome>> {
    let ctx = fp.ctx;
    if s.p() != ctx.p() {
        return Err(LabError::InvalidArgument("code alphabet and group differ".into()));
    }
    check_pairs(ctx, budget)?;
    let k = s.len();
    let bins = k * (k + 1);
    let nn = ctx.order();
    let counts = par::histogram(nn, bins, |l, h| {
        let fl = fp.f[l];
        for r in 0..nn {
            if let Some(m) = s.message_of(ctx.inner(l, r)) {
                let out = s.message_of(ctx.inner(fl, fp.g[r])).unwrap_or(k);
                h[m * (k + 1) + out] += 1;
            }
        }
    });
    Ok((0..k)
        .map(|m| {
            let c = counts[m * (k + 1)..(m + 1) * (k + 1)].to_vec();
            MessageOutcome {
                m,
                fiber_size: c.iter().sum(),
                counts: c,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmMetric {
    pub value: BigRational,
    pub pair: (usize, usize),
}

/// max over message pairs (m, m′) of the total-variation distance between
/// their tampering outcomes, after each message's own outcome is renamed SAME.
pub fn nm_metric(fp: &TamperPair, s: &AffineEvasiveSet, budget: Budget) -> Result<NmMetric> {
    let outcomes = tamper_experiment(fp, s, budget)?;
    let k = s.len();
    // index k + 1 stands for SAME
    let relabel = |o: &MessageOutcome| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); k + 2];
        for (j, &c) in o.counts.iter().enumerate() {
            let slot = if j == o.m { k + 1 } else { j };
            v[slot] += BigRational::new(BigInt::from(c), BigInt::from(o.fiber_size));
        }
        v
    };
    let dists: Vec<Vec<BigRational>> = outcomes.iter().map(relabel).collect();
    let mut best = NmMetric {
        value: BigRational::zero(),
        pair: (0, 0),
    };
    for m in 0..k {
        for m2 in m + 1..k {
            let tv = dists[m]
                .iter()
                .zip(&dists[m2])
                .fold(BigRational::zero(), |acc, (a, b)| acc + (a - b).abs())
                / BigRational::from_integer(2.into());
            if tv > best.value {
                best = NmMetric { value: tv, pair: (m, m2) };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmc::decode;
    use crate::rng;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn identity_joint_distribution() {
        let c = GroupCtx::new(2, 1).unwrap();
        let d = joint_dist(&TamperPair::identity(c), Budget::DEFAULT).unwrap();
        assert_eq!(d.pmf(), &[q(3, 4), q(0, 1), q(0, 1), q(1, 4)]);
    }

    #[test]
    fn constant_tampering_and_marginals() {
        for (p, n) in [(2u64, 2u32), (3, 2), (5, 1)] {
            let c = GroupCtx::new(p, n).unwrap();
            let (c1, c2) = (c.order() - 1, 1);
            let fp = TamperPair::constant(c, c1, c2).unwrap();
            let d = joint_dist(&fp, Budget::DEFAULT).unwrap();
            let k = c.inner(c1, c2);
            let nn = c.order() as i64;
            let pi = p as i64;
            for u in 0..p as u32 {
                let marg = (0..p as u32).fold(BigRational::zero(), |a, y| a + d.at(u, y));
                let expect = if u == 0 {
                    q(1, nn) + q(nn - 1, nn * pi)
                } else {
                    q(nn - 1, nn * pi)
                };
                assert_eq!(marg, expect);
                assert_eq!(d.at(u, k), &marg);
            }
        }
    }

    #[test]
    fn identity_and_constant_experiments() {
        let c = GroupCtx::new(3, 2).unwrap();
        let s = AffineEvasiveSet::new(3, &[1, 2]).unwrap();
        for o in tamper_experiment(&TamperPair::identity(c), &s, Budget::DEFAULT).unwrap() {
            assert_eq!(o.counts[o.m], o.fiber_size);
        }
        assert!(nm_metric(&TamperPair::identity(c), &s, Budget::DEFAULT).unwrap().value.is_zero());
        let fp = TamperPair::constant(c, 4, 4).unwrap();
        let outs = tamper_experiment(&fp, &s, Budget::DEFAULT).unwrap();
        let target = decode(&fp.apply(&Codeword { l: c.zero(), r: c.zero() }), &s);
        for o in &outs {
            assert_eq!(o.probability(target), q(1, 1));
        }
        // the constant outcome is message 1 here, so message 1 sees it as SAME
        let m = nm_metric(&fp, &s, Budget::DEFAULT).unwrap();
        assert_eq!(target, Decoded::Message(1));
        assert_eq!(m.value, q(1, 1));
        let s0 = AffineEvasiveSet::new(3, &[0]).unwrap();
        let fp = TamperPair::constant(c, 0, 0).unwrap();
        assert!(nm_metric(&fp, &s0, Budget::DEFAULT).unwrap().value.is_zero());
    }

    #[test]
    fn experiment_matches_fiber_enumeration() {
        let c = GroupCtx::new(5, 2).unwrap();
        let mut r = rng::stream(12, 0);
        let fp = TamperPair::random(c, &mut r);
        let s = AffineEvasiveSet::new(5, &[1, 3]).unwrap();
        let outs = tamper_experiment(&fp, &s, Budget::DEFAULT).unwrap();
        for (m, o) in outs.iter().enumerate() {
            let sym = s.element(m);
            let mut counts = vec![0u64; 3];
            for rr in 0..25 {
                for l in 0..25 {
                    let cw = Codeword { l: c.vec(l), r: c.vec(rr) };
                    if cw.l.inner(&cw.r).unwrap() != sym {
                        continue;
                    }
                    match decode(&fp.apply(&cw), &s) {
                        Decoded::Message(k) => counts[k] += 1,
                        Decoded::Bottom => counts[2] += 1,
                    }
                }
            }
            assert_eq!(o.counts, counts);
            assert_eq!(o.fiber_size, 24 * 5);
        }
    }

    #[test]
    fn families_and_validation() {
        let c = GroupCtx::new(3, 2).unwrap();
        let fp = TamperPair::permutation(c, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(fp.f()[c.index_of(&[1, 2])], c.index_of(&[2, 1]));
        assert!(TamperPair::permutation(c, &[0, 0], &[0, 1]).is_err());
        let id = LinearMap::identity(3, 2);
        assert_eq!(TamperPair::affine(c, &id, 0, &id, 0).unwrap(), TamperPair::identity(c));
        let fp = TamperPair::coordinatewise(c, &[0, 2, 1], &[0, 1, 2]).unwrap();
        assert_eq!(fp.f()[c.index_of(&[1, 0])], c.index_of(&[2, 0]));
        assert!(TamperPair::from_tables(c, vec![0; 8], vec![0; 9]).is_err());
        assert!(TamperPair::from_tables(c, vec![9; 9], vec![0; 9]).is_err());
        assert!(joint_dist(&TamperPair::identity(c), Budget(10)).is_err());
    }
}
