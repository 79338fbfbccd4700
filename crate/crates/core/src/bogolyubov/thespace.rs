use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::gentle::difference_counts;
use crate::error::{Budget, LabError, Result};
use crate::fourier;
use crate::fpn::{FpSet, Subspace};
use crate::par;
use crate::setops;

/// V = span(Spec_{1/2}(X))^⊥.
pub fn spec_perp_subspace(x: &FpSet) -> Result<Subspace> {
    if x.is_empty() {
        return Err(LabError::EmptySet("X"));
    }
    let spec = fourier::spectrum(x, 0.5)?;
    Ok(Subspace::annihilator(&spec))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThespaceReport {
    pub t: usize,
    pub v: Subspace,
    /// E[1_{A−A}(a − b − x)] with x a sum of t elements of X.
    pub e_plain: BigRational,
    /// The same expectation additionally averaged over v ∈ V of a − b − x + v.
    pub e_shifted: BigRational,
    pub difference: BigRational,
    /// p^n / (2^t |A|).
    pub bound: BigRational,
    pub holds: bool,
    /// e_plain recomputed as Σ_u Â(u)Â(−u)X̂(−u)^t 1̂_{A−A}(u).
    pub e_plain_fourier: f64,
    pub fourier_gap: f64,
    pub fourier_agrees: bool,
}

pub const FOURIER_AGREEMENT_TOL: f64 = 1e-9;

fn overflow() -> LabError {
    LabError::InvalidArgument("count of x-sums overflows 128 bits; lower t".into())
}

/// Both sides of the averaging estimate behind V = span(Spec_{1/2}(X))^⊥,
/// computed exactly by counting.
pub fn lemma_thespace_check(
    a: &FpSet,
    x: &FpSet,
    t: usize,
    budget: Budget,
) -> Result<ThespaceReport> {
    a.ctx().ensure_same(&x.ctx())?;
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    if t == 0 {
        return Err(LabError::InvalidArgument("t must be at least 1".into()));
    }
    let ctx = a.ctx();
    let nn = ctx.order();
    let v = spec_perp_subspace(x)?;
    let dd = setops::difference_set(a, a)?;
    let cab = difference_counts(a);
    let support: Vec<(usize, u128)> = cab
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(z, &c)| (z, c as u128))
        .collect();
    let needed = t as u128 * nn as u128 * x.len() as u128
        + nn as u128 * support.len() as u128
        + nn as u128 * v.size() as u128;
    budget.check("lemma_thespace_check", needed)?;

    // mu[w] = #{(x_1..x_t) ∈ X^t : x_1 + ... + x_t = w}
    let xs = x.to_vec();
    let mut mu: Vec<u128> = (0..nn).map(|w| x.contains(w) as u128).collect();
    for _ in 1..t {
        let next: Vec<Option<u128>> = par::map_range(nn, |w| {
            xs.iter()
                .try_fold(0u128, |acc, &e| acc.checked_add(mu[ctx.sub(w, e)]))
        });
        mu = next.into_iter().collect::<Option<Vec<_>>>().ok_or_else(overflow)?;
    }

    // dist[y] = #{(a, b, x⃗) : a − b − Σx = y}
    let dist: Vec<Option<u128>> = par::map_range(nn, |y| {
        support.iter().try_fold(0u128, |acc, &(z, c)| {
            c.checked_mul(mu[ctx.sub(z, y)]).and_then(|m| acc.checked_add(m))
        })
    });
    let dist = dist.into_iter().collect::<Option<Vec<_>>>().ok_or_else(overflow)?;

    let velems = v.elements();
    let mut plain = BigInt::from(0);
    let mut shifted = BigInt::from(0);
    for (y, &d) in dist.iter().enumerate() {
        if d == 0 {
            continue;
        }
        if dd.contains(y) {
            plain += BigInt::from(d);
        }
        let hits = velems.iter().filter(|&&e| dd.contains(ctx.add(y, e))).count();
        shifted += BigInt::from(d) * BigInt::from(hits);
    }
    let total = BigInt::from(a.len()).pow(2) * BigInt::from(x.len()).pow(t as u32);
    let e_plain = BigRational::new(plain, total.clone());
    let e_shifted = BigRational::new(shifted, total * BigInt::from(v.size()));
    let difference = (&e_plain - &e_shifted).abs();
    let bound = BigRational::new(
        BigInt::from(nn),
        BigInt::from(2u8).pow(t as u32) * BigInt::from(a.len()),
    );
    let holds = difference <= bound;

    let ah = fourier::transform_set(a)?;
    let xh = fourier::transform_set(x)?;
    let dh = fourier::transform(&fourier::DensityFn::indicator(&dd));
    let sum: Complex64 = (0..nn)
        .map(|u| {
            let neg_u = ctx.neg(u);
            ah.at(u) * ah.at(neg_u) * xh.at(neg_u).powu(t as u32) * dh.at(u)
        })
        .sum();
    let exact = e_plain.to_f64().unwrap_or(f64::NAN);
    let gap = (sum - Complex64::new(exact, 0.0)).norm();
    Ok(ThespaceReport {
        t,
        v,
        e_plain,
        e_shifted,
        difference,
        holds,
        bound,
        e_plain_fourier: sum.re,
        fourier_gap: gap,
        fourier_agrees: gap <= FOURIER_AGREEMENT_TOL,
    })
}
