use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::simplex;
use super::JointDist;
use crate::error::Result;

/// Q_D(u, y) = (1/p) Σ_{(a,b) : au + b = y} D(a, b), indexed u·p + y.
/// `d[a * p + b]` is the weight of (a, b).
pub fn mixture_dist(p: u32, d: &[BigRational]) -> Vec<BigRational> {
    let pu = p as usize;
    let inv = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut q = vec![BigRational::zero(); pu * pu];
    for u in 0..pu {
        for a in 0..pu {
            for b in 0..pu {
                let w = &d[a * pu + b];
                if !w.is_zero() {
                    let y = (a * u + b) % pu;
                    q[u * pu + y] += w * &inv;
                }
            }
        }
    }
    q
}

pub fn total_variation(x: &[BigRational], y: &[BigRational]) -> BigRational {
    x.iter()
        .zip(y)
        .fold(BigRational::zero(), |acc, (a, b)| acc + (a - b).abs())
        / BigRational::from_integer(BigInt::from(2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDistanceResult {
    pub p: u32,
    /// min over D of TV(P, Q_D).
    pub distance: BigRational,
    /// Optimal D, indexed a·p + b.
    pub d: Vec<BigRational>,
    /// TV(P, Q_D) recomputed from the returned D.
    pub recomputed: BigRational,
    /// Lower bound from the dual solution.
    pub dual_bound: BigRational,
    pub dual_feasible: bool,
    pub pivots: usize,
}

impl FamilyDistanceResult {
    pub fn distance_f64(&self) -> f64 {
        self.distance.to_f64().unwrap_or(f64::NAN)
    }

    pub fn gap(&self) -> BigRational {
        (&self.distance - &self.dual_bound).abs()
    }

    pub fn certified(&self) -> bool {
        self.dual_feasible && self.gap().is_zero() && self.recomputed == self.distance
    }
}

/// Distance from P to the family of distributions of (u, au + b) with u
/// uniform and (a, b) ~ D independent of u, minimized over all D on F_p².
///
/// Variables are D (p² entries) and the positive and negative parts e⁺, e⁻
/// of P − Q_D in every cell; the objective is (1/2) Σ (e⁺ + e⁻).
pub fn family_distance(pd: &JointDist) -> Result<FamilyDistanceResult> {
    let p = pd.p() as usize;
    let cells = p * p;
    let cols = 3 * cells;
    let inv = BigRational::new(BigInt::one(), BigInt::from(p));
    let one = BigRational::one();
    let mut a = Vec::with_capacity(cells + 1);
    let mut b = Vec::with_capacity(cells + 1);
    for u in 0..p {
        for y in 0..p {
            let cell = u * p + y;
            let mut row = vec![BigRational::zero(); cols];
            for aa in 0..p {
                let bb = (y + p * p - (aa * u) % p) % p;
                row[aa * p + bb] += &inv;
            }
            row[cells + cell] = one.clone();
            row[2 * cells + cell] = -one.clone();
            a.push(row);
            b.push(pd.pmf()[cell].clone());
        }
    }
    let mut total = vec![BigRational::zero(); cols];
    for v in total.iter_mut().take(cells) {
        *v = one.clone();
    }
    a.push(total);
    b.push(one.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let c: Vec<BigRational> = (0..cols)
        .map(|j| if j < cells { BigRational::zero() } else { half.clone() })
        .collect();
    let sol = simplex::minimize(&a, &b, &c)?;
    let d = sol.x[..cells].to_vec();
    let recomputed = total_variation(pd.pmf(), &mixture_dist(pd.p(), &d));
    Ok(FamilyDistanceResult {
        p: pd.p(),
        distance: sol.objective.clone(),
        d,
        recomputed,
        dual_bound: sol.dual_objective.clone(),
        dual_feasible: sol.dual_feasible,
        pivots: sol.pivots,
    })
}
