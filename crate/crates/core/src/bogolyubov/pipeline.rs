use std::collections::BTreeMap;

use num_rational::Ratio;

use super::{gentle_shift_set, max_subspace_in, spec_perp_subspace};
use crate::error::{Budget, LabError, Result};
use crate::fpn::{FpSet, Subspace};
use crate::setops;

#[derive(Debug, Clone, PartialEq)]
pub struct BrzConfig {
    /// Gentle-set thresholds tried in order before the exhaustive fallback.
    pub thresholds: Vec<f64>,
    pub budget: Budget,
}

impl Default for BrzConfig {
    fn default() -> Self {
        BrzConfig {
            thresholds: vec![0.98, 0.99, 0.999],
            budget: Budget::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrzMethod {
    Pipeline,
    BruteForce,
}

impl BrzMethod {
    pub fn name(self) -> &'static str {
        match self {
            BrzMethod::Pipeline => "pipeline",
            BrzMethod::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrzAttempt {
    pub threshold: f64,
    pub gentle_size: usize,
    pub dim: usize,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrzResult {
    pub v: Subspace,
    pub contained: bool,
    pub method: BrzMethod,
    /// |V| / |A|.
    pub size_ratio: Ratio<u64>,
    pub attempts: Vec<BrzAttempt>,
}

/// A subspace V ⊆ 2A − 2A, verified element by element.
///
/// Tries V = span(Spec_{1/2}(X))^⊥ for the gentle shift set X at each
/// configured threshold and falls back to [`max_subspace_in`] when none of
/// them is contained.
pub fn brz_pipeline(a: &FpSet, config: &BrzConfig) -> Result<BrzResult> {
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let s = setops::iterated(a, 2, 2)?;
    let mut attempts = Vec::new();
    let finish = |v: Subspace, method, attempts| {
        let size_ratio = Ratio::new(v.size() as u64, a.len() as u64);
        BrzResult {
            v,
            contained: true,
            method,
            size_ratio,
            attempts,
        }
    };
    for &threshold in &config.thresholds {
        let x = gentle_shift_set(a, threshold)?;
        let v = spec_perp_subspace(&x)?;
        let contained = v.elements().into_iter().all(|e| s.contains(e));
        attempts.push(BrzAttempt {
            threshold,
            gentle_size: x.len(),
            dim: v.dim(),
            contained,
        });
        if contained {
            return Ok(finish(v, BrzMethod::Pipeline, attempts));
        }
    }
    let v = max_subspace_in(&s, config.budget)?;
    Ok(finish(v, BrzMethod::BruteForce, attempts))
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPfrReport {
    pub brz: BrzResult,
    /// Canonical representative g of the chosen coset V + g.
    pub coset_rep: usize,
    pub b: FpSet,
    pub span_b: Subspace,
    /// Number of cosets of V meeting A.
    pub cosets_meeting: usize,
    pub b_ratio: Ratio<u64>,
    pub span_ratio: Ratio<u64>,
}

/// B = A ∩ (V + g) for the coset of V holding the most of A, with ties going
/// to the smallest canonical representative.
pub fn quasi_pfr(a: &FpSet, config: &BrzConfig) -> Result<QuasiPfrReport> {
    let brz = brz_pipeline(a, config)?;
    let v = &brz.v;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in a.iter() {
        groups.entry(v.coset_rep(e)).or_default().push(e);
    }
    let (&rep, members) = groups
        .iter()
        .fold(None::<(&usize, &Vec<usize>)>, |best, cur| match best {
            Some(b) if b.1.len() >= cur.1.len() => Some(b),
            _ => Some(cur),
        })
        .expect("A nonempty");
    let b = FpSet::from_indices(a.ctx(), members.iter().copied())?;
    let span_b = Subspace::span(&b);
    let n = a.len() as u64;
    Ok(QuasiPfrReport {
        coset_rep: rep,
        b_ratio: Ratio::new(b.len() as u64, n),
        span_ratio: Ratio::new(span_b.size() as u64, n),
        cosets_meeting: groups.len(),
        b,
        span_b,
        brz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpn::GroupCtx;
    use crate::instances;
    use crate::rng;

    #[test]
    fn subspace_and_coset() {
        let c = GroupCtx::new(3, 3).unwrap();
        let w = Subspace::from_rows(c, [[1u32, 0, 2], [0, 1, 1]]);
        let r = brz_pipeline(&w.to_set(), &BrzConfig::default()).unwrap();
        assert_eq!(r.v, w);
        assert_eq!(r.method, BrzMethod::Pipeline);
        assert_eq!(r.size_ratio, Ratio::from_integer(1));

        let coset = w.to_set().translate(c.index_of(&[1, 1, 1]));
        let r = brz_pipeline(&coset, &BrzConfig::default()).unwrap();
        assert_eq!(r.v, w);

        let q = quasi_pfr(&w.to_set(), &BrzConfig::default()).unwrap();
        assert_eq!(q.b, w.to_set());
        assert_eq!(q.span_b, w);
        let q = quasi_pfr(&coset, &BrzConfig::default()).unwrap();
        assert_eq!(q.b, coset);
        assert!(q.span_b.size() <= 3 * w.size());
    }

    #[test]
    fn returned_subspaces_are_contained() {
        let c = GroupCtx::new(2, 4).unwrap();
        let mut r = rng::stream(4, 0);
        for _ in 0..200 {
            let a = instances::small_doubling_set(c, Ratio::from_integer(2), &mut r);
            let res = brz_pipeline(&a, &BrzConfig::default()).unwrap();
            let s = setops::iterated(&a, 2, 2).unwrap();
            assert!(res.contained);
            assert!(res.v.to_set().is_subset(&s));
        }
    }

    #[test]
    fn quasi_pfr_packing_count() {
        let c = GroupCtx::new(3, 3).unwrap();
        let mut r = rng::stream(6, 0);
        for _ in 0..30 {
            let a = instances::small_doubling_set(c, Ratio::from_integer(3), &mut r);
            let q = quasi_pfr(&a, &BrzConfig::default()).unwrap();
            assert!(q.b.is_subset(&a));
            assert!(q.b.len() * q.cosets_meeting >= a.len());
            let reps: std::collections::BTreeSet<usize> =
                q.b.iter().map(|e| q.brz.v.coset_rep(e)).collect();
            assert_eq!(reps.len(), 1);
            assert!(q.span_b.size() <= 3 * q.brz.v.size());
        }
    }
}
