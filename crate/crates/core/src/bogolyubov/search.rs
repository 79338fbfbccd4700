use std::collections::BTreeSet;

use crate::error::{Budget, LabError, Result};
use crate::fpn::{enumerate_subspaces, FpSet, Subspace};

fn inside(v: &Subspace, s: &FpSet) -> bool {
    v.basis_indices().into_iter().all(|e| s.contains(e))
        && v.elements().into_iter().all(|e| s.contains(e))
}

/// A maximum-dimension subspace contained in S, smallest in canonical basis
/// order among those of that dimension.
///
/// Grows subspaces one dimension at a time, keeping every subspace of the
/// current dimension that still lies inside S. The work is proportional to
/// the number of subspaces inside S rather than in the whole group.
pub fn max_subspace_in(s: &FpSet, budget: Budget) -> Result<Subspace> {
    if !s.contains(0) {
        return Err(LabError::InvalidArgument(
            "0 must belong to the set searched for subspaces".into(),
        ));
    }
    let ctx = s.ctx();
    let span = Subspace::span(s);
    if span.size() == s.len() {
        return Ok(span);
    }
    let p = ctx.p() as usize;
    let members = s.to_vec();
    let mut steps: u128 = 0;
    let mut level: BTreeSet<Subspace> = BTreeSet::from([Subspace::zero(ctx)]);
    loop {
        let mut next = BTreeSet::new();
        for v in &level {
            let elems = v.elements();
            let mut covered = v.to_set();
            for &x in &members {
                if covered.contains(x) {
                    continue;
                }
                steps += (elems.len() * (p - 1)) as u128;
                budget.check("max_subspace_in", steps)?;
                let ok = (1..p as u32)
                    .all(|c| elems.iter().all(|&e| s.contains(ctx.add(e, ctx.scale(c, x)))));
                let mut w = v.clone();
                w.insert(x);
                for e in w.elements() {
                    covered.insert(e);
                }
                if ok {
                    next.insert(w);
                }
            }
        }
        if next.is_empty() {
            return Ok(level.into_iter().next().expect("level nonempty"));
        }
        level = next;
    }
}

/// The same answer as [`max_subspace_in`], found by walking dimensions
/// downward through the full subspace enumeration and returning the first
/// subspace inside S.
pub fn max_subspace_in_by_enumeration(s: &FpSet, budget: Budget) -> Result<Subspace> {
    if !s.contains(0) {
        return Err(LabError::InvalidArgument(
            "0 must belong to the set searched for subspaces".into(),
        ));
    }
    let ctx = s.ctx();
    for dim in (1..=ctx.dim()).rev() {
        if ctx.p().pow(dim as u32) as usize > s.len() {
            continue;
        }
        for v in enumerate_subspaces(ctx, dim, budget)? {
            if inside(&v, s) {
                return Ok(v);
            }
        }
    }
    Ok(Subspace::zero(ctx))
}
