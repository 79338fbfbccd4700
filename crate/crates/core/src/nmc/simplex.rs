//! Exact-rational two-phase simplex on a dense tableau with Bland's rule.
//!
//! Solves min cᵀx subject to Ax = b, x ≥ 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Dual multipliers y with Aᵀy ≤ c.
    pub duals: Vec<BigRational>,
    /// bᵀy; equals `objective` at an optimum.
    pub dual_objective: BigRational,
    pub dual_feasible: bool,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LpSolution {
    pub fn gap(&self) -> BigRational {
        (&self.objective - &self.dual_objective).abs()
    }
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    z: Vec<BigRational>,
    obj: BigRational,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let piv = self.t[r][e].clone();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.rhs[r] /= &piv;
        let nz: Vec<usize> = (0..self.t[r].len()).filter(|&j| !self.t[r][j].is_zero()).collect();
        let row = self.t[r].clone();
        let rr = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][e].is_zero() {
                continue;
            }
            let f = self.t[i][e].clone();
            for &j in &nz {
                let d = &f * &row[j];
                self.t[i][j] -= d;
            }
            self.rhs[i] -= &f * &rr;
        }
        let ze = self.z[e].clone();
        if !ze.is_zero() {
            for &j in &nz {
                let d = &ze * &row[j];
                self.z[j] -= d;
            }
            self.obj += &ze * &rr;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    fn reset_costs(&mut self, cost: &[BigRational]) {
        let cols = cost.len();
        self.z = cost.to_vec();
        self.obj = BigRational::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !self.t[i][j].is_zero() {
                    let d = cb * &self.t[i][j];
                    self.z[j] -= d;
                }
            }
            self.obj += cb * &self.rhs[i];
        }
    }

    fn run(&mut self, allowed: usize) -> Result<()> {
        loop {
            let Some(e) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][e].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Err(LabError::InvalidArgument("linear program is unbounded".into())),
            }
        }
    }
}

/// Minimizes cᵀx over {x ≥ 0 : Ax = b}.
pub fn minimize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(LabError::InvalidArgument("inconsistent LP dimensions".into()));
    }
    let mut sign = vec![BigRational::one(); m];
    let mut t = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        if flip {
            sign[i] = -BigRational::one();
        }
        let mut row: Vec<BigRational> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        t.push(row);
        rhs.push(if flip { -&b[i] } else { b[i].clone() });
    }
    let mut tab = Tableau {
        t,
        rhs,
        basis: (n..n + m).collect(),
        z: Vec::new(),
        obj: BigRational::zero(),
        pivots: 0,
    };
    let phase1: Vec<BigRational> = (0..n + m)
        .map(|j| if j < n { BigRational::zero() } else { BigRational::one() })
        .collect();
    tab.reset_costs(&phase1);
    tab.run(n + m)?;
    if tab.obj.is_positive() {
        return Err(LabError::InvalidArgument("linear program is infeasible".into()));
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }
    let mut phase2 = c.to_vec();
    phase2.extend((0..m).map(|_| BigRational::zero()));
    tab.reset_costs(&phase2);
    tab.run(n)?;

    let mut x = vec![BigRational::zero(); n];
    for (i, &bi) in tab.basis.iter().enumerate() {
        if bi < n {
            x[bi] = tab.rhs[i].clone();
        }
    }
    let duals: Vec<BigRational> = (0..m)
        .map(|i| {
            let y: BigRational = tab
                .basis
                .iter()
                .enumerate()
                .map(|(k, &bk)| &phase2[bk] * &tab.t[k][n + i])
                .fold(BigRational::zero(), |acc, v| acc + v);
            y * &sign[i]
        })
        .collect();
    let dual_feasible = (0..n).all(|j| {
        let ay = (0..m).fold(BigRational::zero(), |acc, i| acc + &a[i][j] * &duals[i]);
        ay <= c[j]
    });
    let dual_objective = (0..m).fold(BigRational::zero(), |acc, i| acc + &b[i] * &duals[i]);
    let objective = x.iter().zip(c).fold(BigRational::zero(), |acc, (xi, ci)| acc + xi * ci);
    Ok(LpSolution {
        x,
        objective,
        duals,
        dual_objective,
        dual_feasible,
        basis: tab.basis,
        pivots: tab.pivots,
    })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        rational(v, 1)
    }

    #[test]
    fn small_lp() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![r(1), r(2), r(1), r(0)], vec![r(3), r(1), r(0), r(1)]];
        let b = vec![r(4), r(6)];
        let c = vec![r(-1), r(-1), r(0), r(0)];
        let s = minimize(&a, &b, &c).unwrap();
        assert_eq!(s.objective, rational(-14, 5));
        assert_eq!(s.x[0], rational(8, 5));
        assert_eq!(s.x[1], rational(6, 5));
        assert!(s.dual_feasible);
        assert!(s.gap().is_zero());
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        assert!(minimize(&a, &[r(1), r(2)], &[r(0), r(0)]).is_err());
        let a = vec![vec![r(1), r(-1)]];
        assert!(minimize(&a, &[r(1)], &[r(0), r(-1)]).is_err());
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)], vec![r(-1), r(0)]];
        let s = minimize(&a, &[r(1), r(2), r(-1)], &[r(0), r(1)]).unwrap();
        assert_eq!(s.x, vec![r(1), r(0)]);
        assert!(s.dual_feasible);
        assert!(s.gap().is_zero());
    }
}
