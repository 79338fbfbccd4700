use std::fmt;

use super::{FpVec, GroupCtx};
use crate::error::{LabError, Result};

/// A subset of F_p^n stored as a membership bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpSet {
    ctx: GroupCtx,
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for FpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpSet(F_{}^{}, ", self.ctx.p(), self.ctx.n())?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

impl FpSet {
    pub fn empty(ctx: GroupCtx) -> Self {
        FpSet {
            ctx,
            words: vec![0; ctx.order().div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(ctx: GroupCtx) -> Self {
        let mut s = FpSet::empty(ctx);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        let tail = ctx.order() % 64;
        if tail != 0 {
            *s.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        s.len = ctx.order();
        s
    }

    pub fn singleton(ctx: GroupCtx, idx: usize) -> Self {
        let mut s = FpSet::empty(ctx);
        s.insert(idx);
        s
    }

    /// Builds a set from element indices; out-of-range indices are an error.
    pub fn from_indices<I: IntoIterator<Item = usize>>(ctx: GroupCtx, it: I) -> Result<Self> {
        let mut s = FpSet::empty(ctx);
        for idx in it {
            if idx >= ctx.order() {
                return Err(LabError::InvalidArgument(format!(
                    "index {idx} out of range for order {}",
                    ctx.order()
                )));
            }
            s.insert(idx);
        }
        Ok(s)
    }

    pub fn from_vecs<'a, I: IntoIterator<Item = &'a FpVec>>(ctx: GroupCtx, it: I) -> Result<Self> {
        let mut s = FpSet::empty(ctx);
        for v in it {
            ctx.ensure_same(&v.ctx())?;
            s.insert(v.index());
        }
        Ok(s)
    }

    /// Builds a set from a membership predicate on indices.
    pub fn from_fn<F: FnMut(usize) -> bool>(ctx: GroupCtx, mut pred: F) -> Self {
        let mut s = FpSet::empty(ctx);
        for idx in 0..ctx.order() {
            if pred(idx) {
                s.insert(idx);
            }
        }
        s
    }

    #[inline]
    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        idx < self.ctx.order() && self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Inserts `idx`, returning whether it was newly added.
    #[inline]
    pub fn insert(&mut self, idx: usize) -> bool {
        debug_assert!(idx < self.ctx.order());
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, idx: usize) -> bool {
        if !self.contains(idx) {
            return false;
        }
        self.words[idx / 64] &= !(1 << (idx % 64));
        self.len -= 1;
        true
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_words(&self, other: &FpSet, op: impl Fn(u64, u64) -> u64) -> Result<FpSet> {
        self.ctx.ensure_same(&other.ctx)?;
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Ok(FpSet {
            ctx: self.ctx,
            words,
            len,
        })
    }

    pub fn union(&self, other: &FpSet) -> Result<FpSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &FpSet) -> Result<FpSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &FpSet) -> Result<FpSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> FpSet {
        FpSet::full(self.ctx)
            .difference(self)
            .expect("same ctx")
    }

    pub fn is_subset(&self, other: &FpSet) -> bool {
        self.ctx == other.ctx
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(&a, &b)| a & !b == 0)
    }

    /// v + X.
    pub fn translate(&self, v: usize) -> FpSet {
        let mut out = FpSet::empty(self.ctx);
        for x in self.iter() {
            out.insert(self.ctx.add(x, v));
        }
        out
    }

    /// −X.
    pub fn negate(&self) -> FpSet {
        let mut out = FpSet::empty(self.ctx);
        for x in self.iter() {
            out.insert(self.ctx.neg(x));
        }
        out
    }

    pub(crate) fn from_words(ctx: GroupCtx, words: Vec<u64>) -> FpSet {
        debug_assert_eq!(words.len(), ctx.order().div_ceil(64));
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        FpSet { ctx, words, len }
    }

    /// Membership words, 64 elements per word, element i at bit i % 64 of
    /// word i / 64.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let c = GroupCtx::new(3, 3).unwrap();
        let a = FpSet::from_indices(c, [0, 1, 5, 26]).unwrap();
        let b = FpSet::from_indices(c, [1, 2, 26]).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.union(&b).unwrap().to_vec(), vec![0, 1, 2, 5, 26]);
        assert_eq!(a.intersection(&b).unwrap().to_vec(), vec![1, 26]);
        assert_eq!(a.difference(&b).unwrap().to_vec(), vec![0, 5]);
        assert_eq!(a.complement().len(), 23);
        assert!(FpSet::from_indices(c, [1, 26]).unwrap().is_subset(&a));
        assert!(FpSet::from_indices(c, [27]).is_err());
        assert_eq!(FpSet::full(c).len(), 27);
        assert_eq!(FpSet::full(c).iter().count(), 27);
    }

    #[test]
    fn size_tracks_popcount() {
        let c = GroupCtx::new(2, 7).unwrap();
        let mut s = FpSet::empty(c);
        for i in (0..128).step_by(3) {
            s.insert(i);
            s.insert(i);
        }
        s.remove(3);
        s.remove(4);
        let pop: usize = s.words().iter().map(|w| w.count_ones() as usize).sum();
        assert_eq!(s.len(), pop);
    }

    #[test]
    fn translate_and_negate() {
        let c = GroupCtx::new(5, 1).unwrap();
        let a = FpSet::from_indices(c, [0, 1]).unwrap();
        assert_eq!(a.translate(4).to_vec(), vec![0, 4]);
        assert_eq!(a.negate().to_vec(), vec![0, 4]);
    }
}
