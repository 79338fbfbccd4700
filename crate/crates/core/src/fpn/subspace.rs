use super::{inv_mod, FpSet, FpVec, GroupCtx};
use crate::error::{Budget, Result};

/// A linear subspace of F_p^n held as a basis in reduced row-echelon form.
///
/// Rows are sorted by pivot column, every pivot entry is 1 and every pivot
/// column is zero outside its own row. The form is unique per subspace, so
/// two subspaces are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ctx: GroupCtx,
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(ctx: GroupCtx) -> Self {
        Subspace {
            ctx,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn full(ctx: GroupCtx) -> Self {
        let n = ctx.dim();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            ctx,
            pivots: (0..n).collect(),
            rows,
        }
    }

    /// The span of the given coordinate vectors.
    pub fn from_rows<I, R>(ctx: GroupCtx, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[u32]>,
    {
        let mut s = Subspace::zero(ctx);
        for r in rows {
            if s.dim() == ctx.dim() {
                break;
            }
            s.insert_digits(r.as_ref().to_vec());
        }
        s
    }

    /// The smallest subspace containing every element of `set`.
    pub fn span(set: &FpSet) -> Self {
        let ctx = set.ctx();
        let mut s = Subspace::zero(ctx);
        let mut buf = vec![0u32; ctx.dim()];
        for idx in set.iter() {
            if s.dim() == ctx.dim() {
                break;
            }
            ctx.digits_into(idx, &mut buf);
            s.insert_digits(buf.clone());
        }
        s
    }

    pub fn span_vecs(ctx: GroupCtx, vecs: &[FpVec]) -> Result<Self> {
        for v in vecs {
            ctx.ensure_same(&v.ctx())?;
        }
        Ok(Subspace::from_rows(ctx, vecs.iter().map(|v| v.coords())))
    }

    /// Adds a vector to the spanning set. Returns whether the dimension grew.
    pub fn insert_digits(&mut self, mut v: Vec<u32>) -> bool {
        let p = self.ctx.p();
        for d in v.iter_mut() {
            *d %= p;
        }
        self.reduce_digits(&mut v);
        let Some(pivot) = v.iter().position(|&d| d != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], p) as u64;
        for d in v.iter_mut() {
            *d = (*d as u64 * inv % p as u64) as u32;
        }
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                axpy(row, p - c, &v, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        self.insert_digits(self.ctx.digits(idx))
    }

    /// Reduces `v` modulo the subspace; the result has zeros in every pivot
    /// column and is the same for all members of a coset.
    pub fn reduce_digits(&self, v: &mut [u32]) {
        let p = self.ctx.p();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = v[pivot];
            if c != 0 {
                axpy(v, p - c, row, p);
            }
        }
    }

    /// Canonical representative of the coset `idx + V`.
    pub fn coset_rep(&self, idx: usize) -> usize {
        let mut d = self.ctx.digits(idx);
        self.reduce_digits(&mut d);
        self.ctx.index_of(&d)
    }

    pub fn contains(&self, idx: usize) -> bool {
        let mut d = self.ctx.digits(idx);
        self.reduce_digits(&mut d);
        d.iter().all(|&x| x == 0)
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// p^dim.
    pub fn size(&self) -> usize {
        (self.ctx.p() as usize).pow(self.dim() as u32)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<FpVec> {
        self.rows
            .iter()
            .map(|r| FpVec::new(self.ctx, r.clone()).expect("valid row"))
            .collect()
    }

    pub fn basis_indices(&self) -> Vec<usize> {
        self.rows.iter().map(|r| self.ctx.index_of(r)).collect()
    }

    /// All p^dim elements, as indices.
    pub fn elements(&self) -> Vec<usize> {
        let ctx = self.ctx;
        let mut out = Vec::with_capacity(self.size());
        out.push(0usize);
        for b in self.basis_indices() {
            let multiples: Vec<usize> = (1..ctx.p()).map(|c| ctx.scale(c, b)).collect();
            let cur = out.len();
            for i in 0..cur {
                for &m in &multiples {
                    out.push(ctx.add(out[i], m));
                }
            }
        }
        out
    }

    pub fn to_set(&self) -> FpSet {
        let mut s = FpSet::empty(self.ctx);
        for e in self.elements() {
            s.insert(e);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ctx == other.ctx && self.basis_indices().iter().all(|&b| other.contains(b))
    }

    /// The annihilator {v : ⟨u, v⟩ = 0 for all u in this subspace}.
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.ctx.dim();
        let p = self.ctx.p();
        let mut free = Vec::new();
        let mut is_pivot = vec![false; n];
        for &q in &self.pivots {
            is_pivot[q] = true;
        }
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (row, &q) in self.rows.iter().zip(&self.pivots) {
                v[q] = (p - row[f]) % p;
            }
            free.push(v);
        }
        Subspace::from_rows(self.ctx, free)
    }

    /// Y^⊥ for an arbitrary set Y.
    pub fn annihilator(set: &FpSet) -> Subspace {
        Subspace::span(set).orthogonal_complement()
    }
}

/// y += c·x (mod p), coordinate-wise.
fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
    let (c, p) = (c as u64, p as u64);
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = ((*yi as u64 + c * xi as u64) % p) as u32;
    }
}

/// Number of `k`-dimensional subspaces of F_p^n, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: u32, k: u32, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = p.checked_pow(n - i).map(|x| x - 1);
        let den = p.pow(i + 1) - 1;
        match num.and_then(|num| acc.checked_mul(num)) {
            Some(v) => acc = v / den,
            None => return u128::MAX,
        }
    }
    acc
}

/// Iterator over all `dim`-dimensional subspaces, each exactly once.
///
/// Pivot sets are visited in lexicographic order; within a pivot set the free
/// entries run as an odometer with the last free entry fastest.
pub fn enumerate_subspaces(ctx: GroupCtx, dim: usize, budget: Budget) -> Result<SubspaceIter> {
    if dim > ctx.dim() {
        return Err(crate::error::LabError::InvalidArgument(format!(
            "subspace dimension {dim} exceeds n = {}",
            ctx.n()
        )));
    }
    let count = gaussian_binomial(ctx.n(), dim as u32, ctx.p());
    budget.check("enumerate_subspaces", count)?;
    let mut it = SubspaceIter {
        ctx,
        pivots: (0..dim).collect(),
        free: Vec::new(),
        counter: Vec::new(),
        done: false,
        remaining: count,
    };
    it.reset_free();
    Ok(it)
}

pub struct SubspaceIter {
    ctx: GroupCtx,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
    remaining: u128,
}

impl SubspaceIter {
    fn reset_free(&mut self) {
        let n = self.ctx.dim();
        let mut is_pivot = vec![false; n];
        for &q in &self.pivots {
            is_pivot[q] = true;
        }
        self.free.clear();
        for (r, &q) in self.pivots.iter().enumerate() {
            for c in q + 1..n {
                if !is_pivot[c] {
                    self.free.push((r, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let n = self.ctx.dim();
        let mut rows: Vec<Vec<u32>> = self
            .pivots
            .iter()
            .map(|&q| {
                let mut r = vec![0u32; n];
                r[q] = 1;
                r
            })
            .collect();
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            rows[r][c] = v;
        }
        Subspace {
            ctx: self.ctx,
            pivots: self.pivots.clone(),
            rows,
        }
    }

    fn advance(&mut self) {
        let p = self.ctx.p();
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < p {
                return;
            }
            self.counter[i] = 0;
        }
        // odometer wrapped: next pivot combination
        let n = self.ctx.dim();
        let k = self.pivots.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        self.remaining = self.remaining.saturating_sub(1);
        self.advance();
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ctx(p: u64, n: u32) -> GroupCtx {
        GroupCtx::new(p, n).unwrap()
    }

    #[test]
    fn span_examples() {
        let c = ctx(3, 2);
        // (1,0) and (2,0): indices 1 and 2
        let s = Subspace::span(&FpSet::from_indices(c, [1, 2]).unwrap());
        assert_eq!((s.dim(), s.size()), (1, 3));
        let z = Subspace::span(&FpSet::singleton(c, 0));
        assert_eq!((z.dim(), z.size()), (0, 1));
        assert_eq!(z, Subspace::zero(c));
        let c2 = ctx(2, 3);
        // e1 = 1, e2 = 2, e1 + e2 = 3
        let s = Subspace::span(&FpSet::from_indices(c2, [1, 2, 3]).unwrap());
        assert_eq!((s.dim(), s.size()), (2, 4));
        assert_eq!(s.to_set().to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_span_is_zero() {
        let c = ctx(5, 2);
        assert_eq!(Subspace::span(&FpSet::empty(c)), Subspace::zero(c));
    }

    #[test]
    fn complement_examples() {
        let c = ctx(3, 2);
        assert_eq!(Subspace::zero(c).orthogonal_complement(), Subspace::full(c));
        let e1 = Subspace::from_rows(c, [[1u32, 0]]);
        let e2 = Subspace::from_rows(c, [[0u32, 1]]);
        assert_eq!(e1.orthogonal_complement(), e2);
        assert_eq!(Subspace::full(c).orthogonal_complement(), Subspace::zero(c));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let c = ctx(5, 3);
        let a = Subspace::from_rows(c, [[1u32, 2, 3], [0, 1, 4]]);
        let b = Subspace::from_rows(c, [[1u32, 3, 2], [2, 4, 1], [1, 2, 3]]);
        // second basis: rows differ but span the same plane iff equal RREF
        let same = a.to_set() == b.to_set();
        assert_eq!(a == b, same);
        let d = Subspace::from_rows(c, [[1u32, 3, 2], [1, 2, 3]]);
        assert_eq!(a, d);
    }

    #[test]
    fn enumeration_counts() {
        let c = ctx(3, 2);
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(enumerate_subspaces(c, 1, Budget::DEFAULT).unwrap().count(), 4);
        let zero: Vec<_> = enumerate_subspaces(c, 0, Budget::DEFAULT).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(c)]);
        let full: Vec<_> = enumerate_subspaces(c, 2, Budget::DEFAULT).unwrap().collect();
        assert_eq!(full, vec![Subspace::full(c)]);
        assert!(enumerate_subspaces(c, 3, Budget::DEFAULT).is_err());
        assert!(matches!(
            enumerate_subspaces(ctx(2, 10), 5, Budget(1000)),
            Err(crate::error::LabError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_closure_brute_force() {
        // p^n <= 81: every subset of size p^d closed under + is a subspace.
        for (p, n) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (5, 2)] {
            let c = ctx(p, n);
            let all_closed = closed_subsets(c);
            for d in 0..=n as usize {
                let listed: Vec<Subspace> =
                    enumerate_subspaces(c, d, Budget::DEFAULT).unwrap().collect();
                let sets: HashSet<Vec<usize>> =
                    listed.iter().map(|s| s.to_set().to_vec()).collect();
                assert_eq!(sets.len(), listed.len(), "duplicates at {p},{n},{d}");
                assert_eq!(listed.len() as u128, gaussian_binomial(n, d as u32, p as u32));
                let brute: HashSet<Vec<usize>> = all_closed
                    .iter()
                    .filter(|s| s.len() == (p as usize).pow(d as u32))
                    .cloned()
                    .collect();
                assert_eq!(sets, brute, "mismatch at {p},{n},{d}");
            }
        }
    }

    /// Every additively closed subset containing 0, found by growing closures.
    fn closed_subsets(c: GroupCtx) -> HashSet<Vec<usize>> {
        let close = |seed: &[usize]| -> Vec<usize> {
            let mut s: HashSet<usize> = seed.iter().copied().collect();
            s.insert(0);
            loop {
                let cur: Vec<usize> = s.iter().copied().collect();
                let mut grew = false;
                for &a in &cur {
                    for &b in &cur {
                        grew |= s.insert(c.add(a, b));
                    }
                }
                if !grew {
                    let mut v: Vec<usize> = s.into_iter().collect();
                    v.sort();
                    return v;
                }
            }
        };
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut frontier = vec![close(&[])];
        found.insert(frontier[0].clone());
        while let Some(s) = frontier.pop() {
            for x in 0..c.order() {
                if s.binary_search(&x).is_err() {
                    let mut seed = s.clone();
                    seed.push(x);
                    let t = close(&seed);
                    if found.insert(t.clone()) {
                        frontier.push(t);
                    }
                }
            }
        }
        found
    }

    #[test]
    fn coset_reps_partition_the_group() {
        let c = ctx(3, 3);
        let v = Subspace::from_rows(c, [[1u32, 1, 0]]);
        let mut reps = HashSet::new();
        for x in 0..c.order() {
            let r = v.coset_rep(x);
            assert!(v.contains(c.sub(x, r)));
            reps.insert(r);
        }
        assert_eq!(reps.len(), 9);
    }
}
