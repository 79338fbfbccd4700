use rand::Rng;

use super::AffineEvasiveSet;
use crate::error::{LabError, Result};
use crate::fpn::{inv_mod, FpVec, GroupCtx};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub l: FpVec,
    pub r: FpVec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoded {
    Message(usize),
    Bottom,
}

/// Number of R with ⟨L, R⟩ = s, for L = 0 and for any fixed L ≠ 0.
pub fn encode_weights(ctx: GroupCtx, s: u32) -> (u64, u64) {
    let nn = ctx.order() as u64;
    let zero = if s == 0 { nn } else { 0 };
    (zero, nn / ctx.p() as u64)
}

/// A uniformly random (L, R) with ⟨L, R⟩ = S[m].
///
/// L is drawn with weight proportional to its number of solutions R, then R
/// is uniform on the solution set by solving for the coordinate at the first
/// nonzero position of L.
pub fn encode<R: Rng>(m: usize, s: &AffineEvasiveSet, ctx: GroupCtx, rng: &mut R) -> Result<Codeword> {
    if s.p() != ctx.p() {
        return Err(LabError::InvalidArgument(format!(
            "code alphabet is F_{} but the group is over F_{}",
            s.p(),
            ctx.p()
        )));
    }
    if m >= s.len() {
        return Err(LabError::InvalidArgument(format!(
            "message {m} out of range for {} messages",
            s.len()
        )));
    }
    let target = s.element(m);
    let p = ctx.p();
    let n = ctx.dim();
    let nn = ctx.order() as u64;
    let (w0, w1) = encode_weights(ctx, target);
    let total = w0 + (nn - 1) * w1;
    let k = rng.gen_range(0..total);
    if k < w0 {
        let r = rng.gen_range(0..nn) as usize;
        return Ok(Codeword {
            l: ctx.zero(),
            r: ctx.vec(r),
        });
    }
    let l = 1 + ((k - w0) / w1) as usize;
    let ld = ctx.digits(l);
    let pivot = ld.iter().position(|&d| d != 0).expect("L nonzero");
    let mut rd = vec![0u32; n];
    let mut acc = 0u64;
    for j in 0..n {
        if j != pivot {
            rd[j] = rng.gen_range(0..p);
            acc += ld[j] as u64 * rd[j] as u64;
        }
    }
    let rest = (target as u64 + p as u64 - acc % p as u64) % p as u64;
    rd[pivot] = ((rest * inv_mod(ld[pivot], p) as u64) % p as u64) as u32;
    Ok(Codeword {
        l: ctx.vec(l),
        r: FpVec::new(ctx, rd)?,
    })
}

/// Message whose symbol is ⟨L, R⟩, or Bottom when that symbol is outside S.
pub fn decode(c: &Codeword, s: &AffineEvasiveSet) -> Decoded {
    let v = c.l.inner(&c.r).unwrap_or(u32::MAX);
    match s.message_of(v) {
        Some(m) => Decoded::Message(m),
        None => Decoded::Bottom,
    }
}
