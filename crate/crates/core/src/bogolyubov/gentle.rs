use num_rational::Ratio;

use crate::error::{LabError, Result};
use crate::fpn::FpSet;
use crate::par;
use crate::setops;

/// c[z] = #{(a, b) ∈ A² : a − b = z}.
pub fn difference_counts(a: &FpSet) -> Vec<u64> {
    let ctx = a.ctx();
    let mut c = vec![0u64; ctx.order()];
    let elems = a.to_vec();
    for &x in &elems {
        for &y in &elems {
            c[ctx.sub(x, y)] += 1;
        }
    }
    c
}

/// For every x, #{(a, b) ∈ A² : a − b − x ∈ A − A}. Dividing by |A|² gives
/// E_{a,b∈A}[1_{A−A}(a − b − x)].
pub fn gentle_profile(a: &FpSet) -> Result<Vec<u64>> {
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let ctx = a.ctx();
    let dd = setops::difference_set(a, a)?;
    let counts = difference_counts(a);
    let support: Vec<(usize, u64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(z, &c)| (z, c))
        .collect();
    Ok(par::map_range(ctx.order(), |x| {
        support
            .iter()
            .filter(|&&(z, _)| dd.contains(ctx.sub(z, x)))
            .map(|&(_, c)| c)
            .sum()
    }))
}

fn meets(count: u64, total: u64, threshold: f64) -> bool {
    count as f64 >= threshold * total as f64 - 1e-9
}

/// {x : E_{a,b∈A}[1_{A−A}(a − b − x)] ≥ threshold}.
pub fn gentle_shift_set(a: &FpSet, threshold: f64) -> Result<FpSet> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(LabError::InvalidArgument(format!(
            "threshold must lie in [0, 1], got {threshold}"
        )));
    }
    let profile = gentle_profile(a)?;
    let total = (a.len() * a.len()) as u64;
    FpSet::from_indices(
        a.ctx(),
        profile
            .iter()
            .enumerate()
            .filter(|(_, &c)| meets(c, total, threshold))
            .map(|(x, _)| x),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftLevel {
    pub t: usize,
    pub size_tx: usize,
    /// min over x ∈ tX of E_{a,b∈A}[1_{A−A}(a − b − x)], exactly.
    pub min_value: Ratio<u64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSetReport {
    pub size_x: usize,
    pub contains_zero: bool,
    pub threshold: f64,
    pub t_max: usize,
    pub levels: Vec<ShiftLevel>,
}

impl ShiftSetReport {
    pub fn all_hold(&self) -> bool {
        self.levels.iter().all(|l| l.holds)
    }
}

/// Minimum of the shifted membership statistic over tX for t = 1..=t_max.
pub fn shift_closure_check(
    a: &FpSet,
    x: &FpSet,
    t_max: usize,
    threshold: f64,
) -> Result<ShiftSetReport> {
    a.ctx().ensure_same(&x.ctx())?;
    if x.is_empty() {
        return Err(LabError::EmptySet("X"));
    }
    if t_max == 0 {
        return Err(LabError::InvalidArgument("t_max must be at least 1".into()));
    }
    let profile = gentle_profile(a)?;
    let total = (a.len() * a.len()) as u64;
    let mut levels = Vec::with_capacity(t_max);
    let mut tx = x.clone();
    for t in 1..=t_max {
        if t > 1 {
            tx = setops::sumset(&tx, x)?;
        }
        let min = tx.iter().map(|e| profile[e]).min().expect("tX nonempty");
        levels.push(ShiftLevel {
            t,
            size_tx: tx.len(),
            min_value: Ratio::new(min, total),
            holds: meets(min, total, threshold),
        });
    }
    Ok(ShiftSetReport {
        size_x: x.len(),
        contains_zero: x.contains(0),
        threshold,
        t_max,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpn::{GroupCtx, Subspace};
    use crate::instances;
    use crate::rng;

    #[test]
    fn subspace_gentle_set_contains_subspace() {
        let c = GroupCtx::new(3, 3).unwrap();
        let w = Subspace::from_rows(c, [[1u32, 0, 1], [0, 1, 2]]).to_set();
        let g = gentle_shift_set(&w, 0.98).unwrap();
        assert!(w.is_subset(&g));
        assert_eq!(gentle_shift_set(&w, 0.0).unwrap(), FpSet::full(c));
        assert!(gentle_shift_set(&w, 1.5).is_err());
        assert!(gentle_shift_set(&FpSet::empty(c), 0.5).is_err());
    }

    #[test]
    fn profile_matches_triple_loop() {
        let c = GroupCtx::new(2, 4).unwrap();
        let mut r = rng::stream(21, 0);
        for _ in 0..20 {
            let a = instances::random_set(c, 6, &mut r);
            let dd = setops::difference_set(&a, &a).unwrap();
            let profile = gentle_profile(&a).unwrap();
            for x in 0..c.order() {
                let mut hits = 0u64;
                for s in a.iter() {
                    for t in a.iter() {
                        if dd.contains(c.sub(c.sub(s, t), x)) {
                            hits += 1;
                        }
                    }
                }
                assert_eq!(profile[x], hits);
            }
            for thr in [0.5, 0.9, 0.98] {
                let g = gentle_shift_set(&a, thr).unwrap();
                for x in 0..c.order() {
                    assert_eq!(g.contains(x), profile[x] as f64 >= thr * 36.0);
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let c = GroupCtx::new(2, 4).unwrap();
        let w = Subspace::from_rows(c, [[1u32, 1, 0, 0], [0, 0, 1, 0]]).to_set();
        let r = shift_closure_check(&w, &w, 3, 0.9).unwrap();
        assert!(r.levels.iter().all(|l| l.min_value == Ratio::from_integer(1)));
        let a = instances::random_set(c, 5, &mut rng::stream(2, 2));
        let r = shift_closure_check(&a, &FpSet::singleton(c, 0), 4, 0.9).unwrap();
        assert!(r.all_hold());
        assert!(r.levels.iter().all(|l| l.min_value == Ratio::from_integer(1) && l.size_tx == 1));
        assert!(shift_closure_check(&a, &FpSet::empty(c), 2, 0.9).is_err());
    }
}
