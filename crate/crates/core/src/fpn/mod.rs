//! Exact arithmetic in the vector space F_p^n.
//!
//! Elements are addressed by a canonical index in `[0, p^n)`: the base-p
//! positional encoding of the coordinate vector with coordinate 0 as the
//! least significant digit. Every set, table and file in the lab uses this
//! index.

mod linmap;
mod set;
mod subspace;

pub use linmap::LinearMap;
pub use set::FpSet;
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace, SubspaceIter};

use crate::error::{LabError, Result};

/// Largest supported group order.
pub const MAX_ORDER: u64 = 1 << 24;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse in F_p of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

/// The ambient group F_p^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupCtx {
    p: u32,
    n: u32,
    order: usize,
}

impl GroupCtx {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(LabError::NotPrime(p));
        }
        if n == 0 {
            return Err(LabError::ZeroDimension);
        }
        let order = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if order > MAX_ORDER as u128 {
            return Err(LabError::OrderTooLarge { p, n });
        }
        Ok(GroupCtx {
            p: p as u32,
            n,
            order: order as usize,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// p^n.
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ensure_same(&self, other: &GroupCtx) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(LabError::CtxMismatch {
                left_p: self.p,
                left_n: self.n,
                right_p: other.p,
                right_n: other.n,
            })
        }
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        (0..self.n)
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn digits_into(&self, mut idx: usize, out: &mut [u32]) {
        let p = self.p as usize;
        for d in out.iter_mut() {
            *d = (idx % p) as u32;
            idx /= p;
        }
    }

    pub fn index_of(&self, digits: &[u32]) -> usize {
        let p = self.p as usize;
        digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * p + d as usize)
    }

    /// Table of all coordinate vectors, `order * n` digits, row-major.
    pub fn digit_table(&self) -> Vec<u32> {
        let n = self.dim();
        let mut out = vec![0u32; self.order * n];
        for (idx, row) in out.chunks_mut(n).enumerate() {
            self.digits_into(idx, row);
        }
        out
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0usize, 1usize);
        for _ in 0..self.n {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if self.p == 2 {
            return a;
        }
        let p = self.p as usize;
        let mut a = a;
        let (mut out, mut scale) = (0usize, 1usize);
        for _ in 0..self.n {
            let d = a % p;
            if d != 0 {
                out += (p - d) * scale;
            }
            scale *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, c: u32, a: usize) -> usize {
        let p = self.p as u64;
        let c = c as u64 % p;
        let mut a = a;
        let (mut out, mut scale) = (0usize, 1usize);
        for _ in 0..self.n {
            let d = (a as u64 % p) * c % p;
            out += d as usize * scale;
            scale *= self.p as usize;
            a /= self.p as usize;
        }
        out
    }

    /// ⟨a, b⟩ = Σ a_i b_i mod p, on indices.
    #[inline]
    pub fn inner(&self, a: usize, b: usize) -> u32 {
        if self.p == 2 {
            return ((a & b).count_ones() & 1) as u32;
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut acc = 0u64;
        for _ in 0..self.n {
            acc += (a % p) * (b % p);
            a /= p;
            b /= p;
        }
        (acc % p) as u32
    }

    pub fn vec(&self, idx: usize) -> FpVec {
        FpVec {
            ctx: *self,
            coords: self.digits(idx),
        }
    }

    pub fn zero(&self) -> FpVec {
        FpVec {
            ctx: *self,
            coords: vec![0; self.dim()],
        }
    }

    /// The standard basis vector e_i (0-based coordinate).
    pub fn unit(&self, i: usize) -> FpVec {
        let mut v = self.zero();
        v.coords[i] = 1;
        v
    }
}

/// An element of F_p^n as an explicit coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVec {
    ctx: GroupCtx,
    coords: Vec<u32>,
}

impl FpVec {
    pub fn new(ctx: GroupCtx, coords: Vec<u32>) -> Result<Self> {
        if coords.len() != ctx.dim() {
            return Err(LabError::DimensionMismatch {
                expected: ctx.dim(),
                got: coords.len(),
            });
        }
        if let Some(&d) = coords.iter().find(|&&d| d >= ctx.p) {
            return Err(LabError::InvalidArgument(format!(
                "digit {d} out of range for p = {}",
                ctx.p
            )));
        }
        Ok(FpVec { ctx, coords })
    }

    pub fn from_index(ctx: GroupCtx, idx: usize) -> Result<Self> {
        if idx >= ctx.order() {
            return Err(LabError::InvalidArgument(format!(
                "index {idx} out of range for order {}",
                ctx.order()
            )));
        }
        Ok(ctx.vec(idx))
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.ctx.index_of(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &FpVec) -> Result<FpVec> {
        self.ctx.ensure_same(&other.ctx)?;
        let p = self.ctx.p;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FpVec {
            ctx: self.ctx,
            coords,
        })
    }

    pub fn neg(&self) -> FpVec {
        let p = self.ctx.p;
        FpVec {
            ctx: self.ctx,
            coords: self.coords.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn sub(&self, other: &FpVec) -> Result<FpVec> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> FpVec {
        let p = self.ctx.p as u64;
        FpVec {
            ctx: self.ctx,
            coords: self
                .coords
                .iter()
                .map(|&a| ((a as u64 * (c as u64 % p)) % p) as u32)
                .collect(),
        }
    }

    pub fn inner(&self, other: &FpVec) -> Result<u32> {
        self.ctx.ensure_same(&other.ctx)?;
        let p = self.ctx.p as u64;
        let s = self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
        Ok(s as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ctx: GroupCtx, c: &[u32]) -> FpVec {
        FpVec::new(ctx, c.to_vec()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(GroupCtx::new(4, 2), Err(LabError::NotPrime(4)));
        assert_eq!(GroupCtx::new(1, 2), Err(LabError::NotPrime(1)));
        assert_eq!(GroupCtx::new(3, 0), Err(LabError::ZeroDimension));
        assert!(GroupCtx::new(2, 24).is_ok());
        assert!(matches!(
            GroupCtx::new(2, 25),
            Err(LabError::OrderTooLarge { .. })
        ));
        assert!(matches!(
            GroupCtx::new(3, 16),
            Err(LabError::OrderTooLarge { .. })
        ));
        assert_eq!(GroupCtx::new(13, 2).unwrap().order(), 169);
    }

    #[test]
    fn vec_add_examples() {
        let c = GroupCtx::new(3, 2).unwrap();
        assert_eq!(v(c, &[1, 2]).add(&v(c, &[2, 2])).unwrap(), v(c, &[0, 1]));
        let a = v(c, &[2, 1]);
        assert_eq!(a.add(&c.zero()).unwrap(), a);
        let c2 = GroupCtx::new(2, 3).unwrap();
        let w = v(c2, &[1, 0, 1]);
        assert!(w.add(&w).unwrap().is_zero());
        assert!(matches!(
            a.add(&w),
            Err(LabError::CtxMismatch { .. })
        ));
    }

    #[test]
    fn inner_product_examples() {
        let c = GroupCtx::new(3, 2).unwrap();
        assert_eq!(v(c, &[1, 2]).inner(&v(c, &[2, 2])).unwrap(), 0);
        assert_eq!(v(c, &[1, 2]).inner(&c.zero()).unwrap(), 0);
        let c2 = GroupCtx::new(2, 3).unwrap();
        assert_eq!(v(c2, &[1, 1, 0]).inner(&v(c2, &[1, 0, 1])).unwrap(), 1);
        assert!(v(c, &[1, 2]).inner(&v(c2, &[1, 1, 0])).is_err());
    }

    #[test]
    fn index_arithmetic_matches_digit_arithmetic() {
        for (p, n) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
            let c = GroupCtx::new(p, n).unwrap();
            for a in 0..c.order() {
                let va = c.vec(a);
                assert_eq!(va.index(), a);
                assert_eq!(c.neg(a), va.neg().index());
                for b in 0..c.order() {
                    let vb = c.vec(b);
                    assert_eq!(c.add(a, b), va.add(&vb).unwrap().index());
                    assert_eq!(c.sub(a, b), va.sub(&vb).unwrap().index());
                    assert_eq!(c.inner(a, b), va.inner(&vb).unwrap());
                }
                for s in 0..p as u32 {
                    assert_eq!(c.scale(s, a), va.scale(s).index());
                }
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 13, 101] {
            for a in 1..p {
                assert_eq!(a as u64 * inv_mod(a, p) as u64 % p as u64, 1);
            }
        }
    }

    #[test]
    fn digit_validation() {
        let c = GroupCtx::new(3, 2).unwrap();
        assert!(FpVec::new(c, vec![3, 0]).is_err());
        assert!(FpVec::new(c, vec![0]).is_err());
        assert!(FpVec::from_index(c, 9).is_err());
    }
}
