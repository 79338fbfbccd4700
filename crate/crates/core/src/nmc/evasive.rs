use rand::Rng;

use crate::error::{Budget, LabError, Result};
use crate::fpn::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEvasiveSet {
    p: u32,
    elements: Vec<u32>,
    position: Vec<Option<usize>>,
    profile: usize,
}

/// max over affine maps x ↦ ax + b other than the identity of |S ∩ (aS + b)|.
pub fn affine_profile(p: u32, s: &[u32]) -> usize {
    let mut member = vec![false; p as usize];
    for &x in s {
        member[x as usize] = true;
    }
    let mut best = 0;
    for a in 0..p as u64 {
        for b in 0..p as u64 {
            if a == 1 && b == 0 {
                continue;
            }
            let mut hit = vec![false; p as usize];
            let mut count = 0;
            for &x in s {
                let y = ((a * x as u64 + b) % p as u64) as usize;
                if member[y] && !hit[y] {
                    hit[y] = true;
                    count += 1;
                }
            }
            best = best.max(count);
        }
    }
    best
}

impl AffineEvasiveSet {
    /// Message m corresponds to the m-th smallest element of S.
    pub fn new(p: u32, elements: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(LabError::NotPrime(p as u64));
        }
        if elements.is_empty() {
            return Err(LabError::EmptySet("S"));
        }
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() != elements.len() || e.iter().any(|&x| x >= p) {
            return Err(LabError::InvalidArgument(
                "S must consist of distinct elements of F_p".into(),
            ));
        }
        let mut position = vec![None; p as usize];
        for (i, &x) in e.iter().enumerate() {
            position[x as usize] = Some(i);
        }
        let profile = affine_profile(p, &e);
        Ok(AffineEvasiveSet {
            p,
            elements: e,
            position,
            profile,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn element(&self, m: usize) -> u32 {
        self.elements[m]
    }

    pub fn message_of(&self, s: u32) -> Option<usize> {
        self.position.get(s as usize).copied().flatten()
    }

    pub fn profile(&self) -> usize {
        self.profile
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A size-`size` subset of F_p with the smallest affine profile.
///
/// Exhaustive mode scans all subsets in lexicographic order and keeps the
/// first optimum. Greedy mode starts from a seeded random subset and applies
/// improving swaps, comparing (profile, sorted elements) lexicographically,
/// until none is left.
pub fn search_affine_evasive<R: Rng>(
    p: u32,
    size: usize,
    mode: SearchMode,
    rng: &mut R,
    budget: Budget,
) -> Result<AffineEvasiveSet> {
    if !is_prime(p as u64) {
        return Err(LabError::NotPrime(p as u64));
    }
    if size == 0 || size > p as usize {
        return Err(LabError::InvalidArgument(format!(
            "target size must lie in 1..={p}, got {size}"
        )));
    }
    let per_set = (p as u128).pow(2) * size as u128;
    match mode {
        SearchMode::Exhaustive => {
            budget.check(
                "search_affine_evasive",
                binomial(p as u64, size as u64) * per_set,
            )?;
            let mut comb: Vec<u32> = (0..size as u32).collect();
            let mut best: Option<(usize, Vec<u32>)> = None;
            loop {
                let prof = affine_profile(p, &comb);
                if best.as_ref().map_or(true, |b| prof < b.0) {
                    best = Some((prof, comb.clone()));
                }
                let mut i = size;
                loop {
                    if i == 0 {
                        let (_, s) = best.expect("at least one subset");
                        return AffineEvasiveSet::new(p, &s);
                    }
                    i -= 1;
                    if comb[i] < p - (size - i) as u32 {
                        break;
                    }
                }
                comb[i] += 1;
                for j in i + 1..size {
                    comb[j] = comb[j - 1] + 1;
                }
            }
        }
        SearchMode::Greedy => {
            let picks = rand::seq::index::sample(rng, p as usize, size);
            let mut cur: Vec<u32> = picks.iter().map(|x| x as u32).collect();
            cur.sort_unstable();
            let mut key = (affine_profile(p, &cur), cur.clone());
            let mut spent: u128 = 0;
            'outer: loop {
                for i in 0..size {
                    for y in 0..p {
                        if cur.contains(&y) {
                            continue;
                        }
                        spent += per_set;
                        budget.check("search_affine_evasive", spent)?;
                        let mut cand = cur.clone();
                        cand[i] = y;
                        cand.sort_unstable();
                        let ck = (affine_profile(p, &cand), cand.clone());
                        if ck < key {
                            key = ck;
                            cur = cand;
                            continue 'outer;
                        }
                    }
                }
                return AffineEvasiveSet::new(p, &key.1);
            }
        }
    }
}
