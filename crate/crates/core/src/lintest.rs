//! The one-query difference linearity test: accept f when
//! f(x − x′) = f(x) − f(x′) for uniform x, x′.

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Budget, LabError, Result};
use crate::fpn::{inv_mod, GroupCtx, LinearMap};
use crate::par;

/// A total map F_p^n → F_p^n stored as a table of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnTable {
    ctx: GroupCtx,
    table: Vec<usize>,
}

impl FnTable {
    pub fn new(ctx: GroupCtx, table: Vec<usize>) -> Result<Self> {
        if table.len() != ctx.order() {
            return Err(LabError::DimensionMismatch {
                expected: ctx.order(),
                got: table.len(),
            });
        }
        if table.iter().any(|&v| v >= ctx.order()) {
            return Err(LabError::InvalidArgument("function value out of range".into()));
        }
        Ok(FnTable { ctx, table })
    }

    pub fn linear(ctx: GroupCtx, m: &LinearMap) -> Result<Self> {
        m.check_shape(&ctx, &ctx)?;
        Ok(FnTable {
            ctx,
            table: m.table(&ctx, &ctx),
        })
    }

    /// x ↦ Mx + c.
    pub fn affine(ctx: GroupCtx, m: &LinearMap, c: usize) -> Result<Self> {
        let mut f = FnTable::linear(ctx, m)?;
        for v in f.table.iter_mut() {
            *v = ctx.add(*v, c);
        }
        Ok(f)
    }

    pub fn random<R: Rng>(ctx: GroupCtx, rng: &mut R) -> Self {
        FnTable {
            ctx,
            table: (0..ctx.order()).map(|_| rng.gen_range(0..ctx.order())).collect(),
        }
    }

    /// Changes the value at round(rate · p^n) distinct random points to a
    /// different random value.
    pub fn corrupt<R: Rng>(&self, rate: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(LabError::InvalidArgument(format!("rate must lie in [0, 1], got {rate}")));
        }
        let nn = self.ctx.order();
        let k = (rate * nn as f64).round() as usize;
        let mut out = self.clone();
        if nn < 2 {
            return Ok(out);
        }
        for x in rand::seq::index::sample(rng, nn, k.min(nn)).iter() {
            let shift = rng.gen_range(1..nn);
            out.table[x] = (self.table[x] + shift) % nn;
        }
        Ok(out)
    }

    /// x ↦ B f(A x).
    pub fn conjugate(&self, a: &LinearMap, b: &LinearMap) -> Result<Self> {
        let ctx = self.ctx;
        let ta = FnTable::linear(ctx, a)?;
        let tb = FnTable::linear(ctx, b)?;
        Ok(FnTable {
            ctx,
            table: (0..ctx.order()).map(|x| tb.table[self.table[ta.table[x]]]).collect(),
        })
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn at(&self, x: usize) -> usize {
        self.table[x]
    }
}

fn check_pairs(ctx: GroupCtx, budget: Budget) -> Result<()> {
    let pairs = (ctx.order() as u128).pow(2);
    Budget(1 << 30).check("accept_prob", pairs)?;
    budget.check("accept_prob", pairs)
}

/// Exact Pr_{x,x′}[f(x − x′) = f(x) − f(x′)], denominator p^{2n}.
pub fn accept_prob(f: &FnTable, budget: Budget) -> Result<Ratio<u64>> {
    let ctx = f.ctx;
    check_pairs(ctx, budget)?;
    let nn = ctx.order();
    let hits = par::sum_range_u64(nn, |x| {
        let fx = f.table[x];
        (0..nn)
            .filter(|&y| f.table[ctx.sub(x, y)] == ctx.sub(fx, f.table[y]))
            .count() as u64
    });
    Ok(Ratio::new(hits, (nn * nn) as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledAccept {
    pub samples: usize,
    pub estimate: f64,
    /// Hoeffding half-width: the true value lies within estimate ± half_width
    /// except with probability delta.
    pub half_width: f64,
    pub delta: f64,
}

pub fn accept_prob_sampled<R: Rng>(f: &FnTable, samples: usize, delta: f64, rng: &mut R) -> Result<SampledAccept> {
    if samples == 0 || !(delta > 0.0 && delta < 1.0) {
        return Err(LabError::InvalidArgument("need samples ≥ 1 and delta in (0, 1)".into()));
    }
    let ctx = f.ctx;
    let nn = ctx.order();
    let hits = (0..samples)
        .filter(|_| {
            let x = rng.gen_range(0..nn);
            let y = rng.gen_range(0..nn);
            f.table[ctx.sub(x, y)] == ctx.sub(f.table[x], f.table[y])
        })
        .count();
    Ok(SampledAccept {
        samples,
        estimate: hits as f64 / samples as f64,
        half_width: ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt(),
        delta,
    })
}

/// Images Mx for every x, from the columns of M.
fn image_table(ctx: GroupCtx, cols: &[usize]) -> Vec<usize> {
    let p = ctx.p() as usize;
    let nn = ctx.order();
    let mut img = vec![0usize; nn];
    for x in 1..nn {
        let mut j = 0;
        let mut unit = 1;
        while (x / unit) % p == 0 {
            j += 1;
            unit *= p;
        }
        img[x] = ctx.add(img[x - unit], cols[j]);
    }
    img
}

fn matrix_from_counter(ctx: GroupCtx, mut k: u128) -> LinearMap {
    let n = ctx.dim();
    let p = ctx.p() as u128;
    let mut entries = vec![0u32; n * n];
    for e in entries.iter_mut().rev() {
        *e = (k % p) as u32;
        k /= p;
    }
    LinearMap::new(ctx.p(), n, n, entries).expect("entries in range")
}

fn columns(ctx: GroupCtx, m: &LinearMap) -> Vec<usize> {
    (0..ctx.dim()).map(|j| m.apply(&ctx, &ctx, ctx.unit(j).index())).collect()
}

fn agreement_count(f: &FnTable, m: &LinearMap) -> u64 {
    let img = image_table(f.ctx, &columns(f.ctx, m));
    img.iter().zip(&f.table).filter(|(a, b)| a == b).count() as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AgreementMode {
    Exhaustive,
    /// Interpolate from `samples` random bases of F_p^n.
    Sampled { samples: usize },
    /// Exhaustive when the budget allows, sampled otherwise.
    Auto { samples: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub matrix: LinearMap,
    /// Pr_x[f(x) = Mx].
    pub agreement: Ratio<u64>,
    pub exhaustive: bool,
    pub matrices_examined: u128,
    /// For sampled runs, (1 − α^n)^samples with α the best agreement found:
    /// the chance that a map agreeing on an α-fraction was never interpolated.
    pub miss_probability: Option<f64>,
}

/// Solves for M with M b_i = f(b_i), or None when the b_i are dependent.
fn interpolate(ctx: GroupCtx, basis: &[usize], values: &[usize]) -> Option<LinearMap> {
    let n = ctx.dim();
    let p = ctx.p() as u64;
    // Solve Mᵀ from Bᵀ Mᵀ = Fᵀ by Gauss–Jordan on rows [b_i | f(b_i)].
    let mut rows: Vec<Vec<u32>> = basis
        .iter()
        .zip(values)
        .map(|(&b, &v)| {
            let mut r = ctx.digits(b);
            r.extend(ctx.digits(v));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| rows[r][c] != 0)?;
        rows.swap(c, piv);
        let inv = inv_mod(rows[c][c], ctx.p()) as u64;
        for x in rows[c].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for r in 0..n {
            if r != c && rows[r][c] != 0 {
                let f = rows[r][c] as u64;
                for k in 0..2 * n {
                    let sub = f * rows[c][k] as u64 % p;
                    rows[r][k] = ((rows[r][k] as u64 + p - sub) % p) as u32;
                }
            }
        }
    }
    // row j now holds e_j | M e_j, so M's column j is rows[j][n..]
    let mut entries = vec![0u32; n * n];
    for j in 0..n {
        for i in 0..n {
            entries[i * n + j] = rows[j][n + i];
        }
    }
    LinearMap::new(ctx.p(), n, n, entries).ok()
}

/// The linear map agreeing with f on the most points, ties going to the
/// smallest matrix in row-major lexicographic order.
pub fn best_linear_agreement<R: Rng>(
    f: &FnTable,
    mode: AgreementMode,
    budget: Budget,
    rng: &mut R,
) -> Result<AgreementReport> {
    let ctx = f.ctx;
    let n = ctx.dim();
    let nn = ctx.order() as u128;
    let total = (ctx.p() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    let fits = budget.check("best_linear_agreement", total.saturating_mul(nn));
    let exhaustive = match mode {
        AgreementMode::Exhaustive => {
            fits?;
            true
        }
        AgreementMode::Sampled { .. } => false,
        AgreementMode::Auto { .. } => fits.is_ok(),
    };
    if exhaustive {
        const CHUNK: u128 = 256;
        let chunks = total.div_ceil(CHUNK) as usize;
        let best = par::map_range(chunks, |c| {
            let lo = c as u128 * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut best = (0u64, lo);
            for k in lo..hi {
                let a = agreement_count(f, &matrix_from_counter(ctx, k));
                if a > best.0 {
                    best = (a, k);
                }
            }
            best
        })
        .into_iter()
        .fold((0u64, 0u128), |acc, b| if b.0 > acc.0 { b } else { acc });
        return Ok(AgreementReport {
            matrix: matrix_from_counter(ctx, best.1),
            agreement: Ratio::new(best.0, nn as u64),
            exhaustive: true,
            matrices_examined: total,
            miss_probability: None,
        });
    }
    let samples = match mode {
        AgreementMode::Sampled { samples } | AgreementMode::Auto { samples } => samples,
        AgreementMode::Exhaustive => unreachable!(),
    };
    if samples == 0 {
        return Err(LabError::InvalidArgument("sampled agreement needs samples ≥ 1".into()));
    }
    budget.check("best_linear_agreement", samples as u128 * nn)?;
    let mut best: Option<(u64, LinearMap)> = None;
    let mut examined = 0u128;
    for _ in 0..samples {
        let basis: Vec<usize> = (0..n).map(|_| rng.gen_range(0..ctx.order())).collect();
        let values: Vec<usize> = basis.iter().map(|&b| f.table[b]).collect();
        let Some(m) = interpolate(ctx, &basis, &values) else {
            continue;
        };
        examined += 1;
        let a = agreement_count(f, &m);
        let better = match &best {
            None => true,
            Some((ba, bm)) => a > *ba || (a == *ba && m < *bm),
        };
        if better {
            best = Some((a, m));
        }
    }
    let (count, matrix) = best.unwrap_or((agreement_count(f, &LinearMap::zero(ctx.p(), n, n)), LinearMap::zero(ctx.p(), n, n)));
    let alpha = count as f64 / nn as f64;
    Ok(AgreementReport {
        matrix,
        agreement: Ratio::new(count, nn as u64),
        exhaustive: false,
        matrices_examined: examined,
        miss_probability: Some((1.0 - alpha.powi(n as i32)).powf(samples as f64)),
    })
}

/// Best agreement with an affine map x ↦ Mx + c, exhaustive over M and c.
pub fn best_affine_agreement(f: &FnTable, budget: Budget) -> Result<(LinearMap, usize, Ratio<u64>)> {
    let ctx = f.ctx;
    let mut best: Option<(LinearMap, usize, Ratio<u64>)> = None;
    let mut rng = crate::rng::stream(0, 0);
    for c in 0..ctx.order() {
        let shifted = FnTable {
            ctx,
            table: f.table.iter().map(|&v| ctx.sub(v, c)).collect(),
        };
        let r = best_linear_agreement(&shifted, AgreementMode::Exhaustive, budget, &mut rng)?;
        if best.as_ref().map_or(true, |b| r.agreement > b.2) {
            best = Some((r.matrix, c, r.agreement));
        }
    }
    Ok(best.expect("group nonempty"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub rate: f64,
    pub trial: usize,
    pub accept: Ratio<u64>,
    pub agreement: Ratio<u64>,
    pub exhaustive: bool,
}

/// For each corruption rate, `trials` random linear maps corrupted on that
/// fraction of points (rate 1 means a uniformly random table), with their
/// acceptance probability and best linear agreement.
pub fn soundness_sweep<R: Rng>(
    ctx: GroupCtx,
    rates: &[f64],
    trials: usize,
    samples: usize,
    rng: &mut R,
    budget: Budget,
) -> Result<Vec<SweepPoint>> {
    let n = ctx.dim();
    let mut out = Vec::with_capacity(rates.len() * trials);
    for &rate in rates {
        for trial in 0..trials {
            let f = if rate >= 1.0 {
                FnTable::random(ctx, rng)
            } else {
                let entries = (0..n * n).map(|_| rng.gen_range(0..ctx.p())).collect();
                let m = LinearMap::new(ctx.p(), n, n, entries)?;
                FnTable::linear(ctx, &m)?.corrupt(rate, rng)?
            };
            let accept = accept_prob(&f, budget)?;
            let ag = best_linear_agreement(&f, AgreementMode::Auto { samples }, budget, rng)?;
            out.push(SweepPoint {
                rate,
                trial,
                accept,
                agreement: ag.agreement,
                exhaustive: ag.exhaustive,
            });
        }
    }
    Ok(out)
}
