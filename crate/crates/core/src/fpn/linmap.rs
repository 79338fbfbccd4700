use super::{GroupCtx, Subspace};
use crate::error::{LabError, Result};

/// A linear map F_p^cols → F_p^rows as a dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl LinearMap {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(LabError::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|&e| e >= p) {
            return Err(LabError::InvalidArgument(format!(
                "matrix entry out of range for p = {p}"
            )));
        }
        Ok(LinearMap {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        LinearMap {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = LinearMap::zero(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The map x ↦ (x_{c_0}, x_{c_1}, ...).
    pub fn projection(p: u32, cols: usize, coords: &[usize]) -> Result<Self> {
        let mut m = LinearMap::zero(p, coords.len(), cols);
        for (r, &c) in coords.iter().enumerate() {
            if c >= cols {
                return Err(LabError::InvalidArgument(format!(
                    "projection coordinate {c} out of range"
                )));
            }
            m.entries[r * cols + c] = 1;
        }
        Ok(m)
    }

    /// The map x ↦ (⟨r_0, x⟩, ⟨r_1, x⟩, ...) for the given row vectors.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LabError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        LinearMap::new(p, rows.len(), cols, entries)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn apply_digits(&self, x: &[u32], out: &mut [u32]) {
        let p = self.p as u64;
        for (r, o) in out.iter_mut().enumerate() {
            let s = self
                .row(r)
                .iter()
                .zip(x)
                .fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64);
            *o = (s % p) as u32;
        }
    }

    /// Applies the map to an element index of `domain`, returning an index of
    /// `codomain`.
    pub fn apply(&self, domain: &GroupCtx, codomain: &GroupCtx, idx: usize) -> usize {
        let x = domain.digits(idx);
        let mut y = vec![0u32; self.rows];
        self.apply_digits(&x, &mut y);
        codomain.index_of(&y)
    }

    /// Checks that the map goes from `domain` to `codomain`.
    pub fn check_shape(&self, domain: &GroupCtx, codomain: &GroupCtx) -> Result<()> {
        if self.p != domain.p() || self.p != codomain.p() {
            return Err(LabError::InvalidArgument(format!(
                "matrix over F_{} applied to F_{}^n",
                self.p,
                domain.p()
            )));
        }
        if self.cols != domain.dim() {
            return Err(LabError::DimensionMismatch {
                expected: domain.dim(),
                got: self.cols,
            });
        }
        if self.rows != codomain.dim() {
            return Err(LabError::DimensionMismatch {
                expected: codomain.dim(),
                got: self.rows,
            });
        }
        Ok(())
    }

    /// The full table x ↦ Mx over `domain`.
    pub fn table(&self, domain: &GroupCtx, codomain: &GroupCtx) -> Vec<usize> {
        let mut x = vec![0u32; self.cols];
        let mut y = vec![0u32; self.rows];
        (0..domain.order())
            .map(|idx| {
                domain.digits_into(idx, &mut x);
                self.apply_digits(&x, &mut y);
                codomain.index_of(&y)
            })
            .collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows || self.p != other.p {
            return Err(LabError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let p = self.p as u64;
        let mut out = LinearMap::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).fold(0u64, |acc, k| {
                    acc + self.entry(i, k) as u64 * other.entry(k, j) as u64
                });
                out.entries[i * other.cols + j] = (s % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let ctx = GroupCtx::new(self.p as u64, self.cols.max(1) as u32);
        match ctx {
            Ok(ctx) if self.cols > 0 => {
                Subspace::from_rows(ctx, (0..self.rows).map(|r| self.row(r).to_vec())).dim()
            }
            _ => rank_small(self),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

// Fallback for shapes whose column space exceeds the group-order limit.
fn rank_small(m: &LinearMap) -> usize {
    let p = m.p;
    let mut rows: Vec<Vec<u32>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = super::inv_mod(rows[rank][c], p) as u64;
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] as u64;
                for k in 0..m.cols {
                    let sub = f * rows[rank][k] as u64 % p as u64;
                    rows[r][k] = ((rows[r][k] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_compose() {
        let c = GroupCtx::new(3, 2).unwrap();
        let m = LinearMap::new(3, 2, 2, vec![1, 1, 0, 2]).unwrap();
        // x = (1, 2): (1 + 2, 4) = (0, 1)
        let x = c.index_of(&[1, 2]);
        assert_eq!(m.apply(&c, &c, x), c.index_of(&[0, 1]));
        let id = LinearMap::identity(3, 2);
        assert_eq!(m.compose(&id).unwrap(), m);
        assert!(m.is_invertible());
        let proj = LinearMap::projection(3, 2, &[0]).unwrap();
        assert_eq!(proj.rank(), 1);
        assert!(!LinearMap::zero(3, 2, 2).is_invertible());
    }

    #[test]
    fn table_is_linear() {
        let c = GroupCtx::new(5, 2).unwrap();
        let m = LinearMap::new(5, 2, 2, vec![2, 3, 4, 1]).unwrap();
        let t = m.table(&c, &c);
        for a in 0..c.order() {
            for b in 0..c.order() {
                assert_eq!(t[c.add(a, b)], c.add(t[a], t[b]));
            }
        }
    }
}
