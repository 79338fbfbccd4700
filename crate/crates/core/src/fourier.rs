//! Fourier analysis on F_p^n.
//!
//! Conventions, with ω = e^{2πi/p}:
//!
//! * forward transform  ĥ(u) = E_{x ∈ F_p^n} h(x) ω^{⟨u,x⟩}
//! * inverse            h(x) = Σ_u ĥ(u) ω^{−⟨u,x⟩}
//! * convolution        (f * g)(x) = E_y f(y) g(x − y), so (f * g)^ = f̂ ĝ
//!
//! For a set X the transform of its density ρ_X is X̂(u) = E_{x∈X} ω^{⟨u,x⟩}.
//! Note (ρ_x * f)(a) = f(a − x) under this convolution.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::fpn::{FpSet, GroupCtx, Subspace};
use crate::par;

/// Slack used when comparing |X̂(u)| against a spectrum threshold, so that
/// values equal to the threshold in exact arithmetic are not lost to
/// rounding.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Above this order [`convolve`] goes through the fast transform.
pub const DIRECT_CONVOLVE_MAX_ORDER: usize = 243;

/// A real function on F_p^n.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFn {
    ctx: GroupCtx,
    values: Vec<f64>,
}

impl DensityFn {
    pub fn from_values(ctx: GroupCtx, values: Vec<f64>) -> Result<Self> {
        if values.len() != ctx.order() {
            return Err(LabError::DimensionMismatch {
                expected: ctx.order(),
                got: values.len(),
            });
        }
        Ok(DensityFn { ctx, values })
    }

    pub fn constant(ctx: GroupCtx, c: f64) -> Self {
        DensityFn {
            ctx,
            values: vec![c; ctx.order()],
        }
    }

    /// 1_A.
    pub fn indicator(a: &FpSet) -> Self {
        let ctx = a.ctx();
        let mut values = vec![0.0; ctx.order()];
        for x in a.iter() {
            values[x] = 1.0;
        }
        DensityFn { ctx, values }
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// a ↦ f(a − x), which equals ρ_x * f.
    pub fn translate(&self, x: usize) -> DensityFn {
        let ctx = self.ctx;
        let mut values = vec![0.0; ctx.order()];
        for (a, v) in values.iter_mut().enumerate() {
            *v = self.values[ctx.sub(a, x)];
        }
        DensityFn { ctx, values }
    }

    pub fn sub(&self, other: &DensityFn) -> Result<DensityFn> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(DensityFn {
            ctx: self.ctx,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// (E_x |f(x)|^q)^{1/q}.
    pub fn norm(&self, q: f64) -> f64 {
        let m = self.values.iter().map(|v| v.abs().powf(q)).sum::<f64>() / self.values.len() as f64;
        m.powf(1.0 / q)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// ρ_A = (p^n/|A|) 1_A.
pub fn density(a: &FpSet) -> Result<DensityFn> {
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    let ctx = a.ctx();
    let w = ctx.order() as f64 / a.len() as f64;
    let mut values = vec![0.0; ctx.order()];
    for x in a.iter() {
        values[x] = w;
    }
    Ok(DensityFn { ctx, values })
}

/// Fourier coefficients, one per frequency u.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    ctx: GroupCtx,
    coeffs: Vec<Complex64>,
}

impl SpectrumTable {
    pub fn from_coeffs(ctx: GroupCtx, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != ctx.order() {
            return Err(LabError::DimensionMismatch {
                expected: ctx.order(),
                got: coeffs.len(),
            });
        }
        Ok(SpectrumTable { ctx, coeffs })
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn at(&self, u: usize) -> Complex64 {
        self.coeffs[u]
    }

    pub fn pointwise_mul(&self, other: &SpectrumTable) -> Result<SpectrumTable> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(SpectrumTable {
            ctx: self.ctx,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Σ_u |ĥ(u)|².
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn roots_of_unity(p: u32, sign: f64) -> Vec<Complex64> {
    (0..p)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * k as f64 / p as f64))
        .collect()
}

/// Reference transform, Θ(p^{2n}).
pub fn transform_direct(h: &DensityFn) -> SpectrumTable {
    let ctx = h.ctx;
    let w = roots_of_unity(ctx.p(), 1.0);
    let nn = ctx.order() as f64;
    let coeffs = par::map_range(ctx.order(), |u| {
        let s: Complex64 = h
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(x, &v)| w[ctx.inner(u, x) as usize] * v)
            .sum();
        s / nn
    });
    SpectrumTable { ctx, coeffs }
}

/// One length-p DFT along every coordinate axis in turn, Θ(n p^{n+1}).
fn transform_axes(ctx: GroupCtx, data: &mut [Complex64], sign: f64, normalize: bool) {
    let p = ctx.p() as usize;
    let w = roots_of_unity(ctx.p(), sign);
    let scale = if normalize { 1.0 / p as f64 } else { 1.0 };
    let mut stride = 1usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); p];
    for _ in 0..ctx.n() {
        let block = stride * p;
        for start in (0..data.len()).step_by(block) {
            for off in 0..stride {
                let base = start + off;
                for (k, b) in buf.iter_mut().enumerate() {
                    *b = data[base + k * stride];
                }
                for m in 0..p {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k, b) in buf.iter().enumerate() {
                        acc += b * w[(m * k) % p];
                    }
                    data[base + m * stride] = acc * scale;
                }
            }
        }
        stride = block;
    }
}

/// Fast transform; agrees with [`transform_direct`] to rounding.
pub fn transform(h: &DensityFn) -> SpectrumTable {
    let mut data: Vec<Complex64> = h.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_axes(h.ctx, &mut data, 1.0, true);
    SpectrumTable {
        ctx: h.ctx,
        coeffs: data,
    }
}

/// X̂(u) = E_{x∈X} ω^{⟨u,x⟩}.
pub fn transform_set(x: &FpSet) -> Result<SpectrumTable> {
    Ok(transform(&density(x)?))
}

/// h(x) = Σ_u ĥ(u) ω^{−⟨u,x⟩}, complex valued.
pub fn inverse(t: &SpectrumTable) -> Vec<Complex64> {
    let mut data = t.coeffs.clone();
    transform_axes(t.ctx, &mut data, -1.0, false);
    data
}

/// Inverse transform keeping real parts.
pub fn inverse_real(t: &SpectrumTable) -> DensityFn {
    DensityFn {
        ctx: t.ctx,
        values: inverse(t).into_iter().map(|c| c.re).collect(),
    }
}

/// Reference convolution, Θ(p^{2n}).
pub fn convolve_direct(f: &DensityFn, g: &DensityFn) -> Result<DensityFn> {
    f.ctx.ensure_same(&g.ctx)?;
    let ctx = f.ctx;
    let nn = ctx.order() as f64;
    let support: Vec<(usize, f64)> = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(y, &v)| (y, v))
        .collect();
    let values = par::map_range(ctx.order(), |x| {
        support
            .iter()
            .map(|&(y, fy)| fy * g.values[ctx.sub(x, y)])
            .sum::<f64>()
            / nn
    });
    Ok(DensityFn { ctx, values })
}

/// Convolution through the transform: (f * g) = inverse(f̂ ĝ).
pub fn convolve_fft(f: &DensityFn, g: &DensityFn) -> Result<DensityFn> {
    f.ctx.ensure_same(&g.ctx)?;
    let prod = transform(f).pointwise_mul(&transform(g))?;
    Ok(inverse_real(&prod))
}

/// (f * g)(x) = E_y f(y) g(x − y).
pub fn convolve(f: &DensityFn, g: &DensityFn) -> Result<DensityFn> {
    if f.ctx.order() <= DIRECT_CONVOLVE_MAX_ORDER {
        convolve_direct(f, g)
    } else {
        convolve_fft(f, g)
    }
}

/// ⟨f, g⟩ = E_x f(x) g(x).
pub fn fn_inner(f: &DensityFn, g: &DensityFn) -> Result<f64> {
    f.ctx.ensure_same(&g.ctx)?;
    Ok(f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum::<f64>() / f.values.len() as f64)
}

/// Spec_γ(X) = {u : |X̂(u)| ≥ γ}.
pub fn spectrum(x: &FpSet, gamma: f64) -> Result<FpSet> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(LabError::InvalidArgument(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let t = transform_set(x)?;
    Ok(spectrum_of(&t, gamma))
}

pub fn spectrum_of(t: &SpectrumTable, gamma: f64) -> FpSet {
    let mut out = FpSet::empty(t.ctx);
    for (u, c) in t.coeffs.iter().enumerate() {
        if c.norm() >= gamma - SPECTRUM_TOL {
            out.insert(u);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChangReport {
    pub gamma: f64,
    pub size_x: usize,
    pub spec_size: usize,
    /// dim span(Spec_γ(X)).
    pub dim: usize,
    /// 8 γ^{-2} log(p^n / |X|).
    pub bound: f64,
    pub slack: f64,
    pub log_base: LogBase,
    pub violated: bool,
}

/// Compares dim span(Spec_γ(X)) with 8γ^{-2} log(p^n/|X|).
pub fn chang_check(x: &FpSet, gamma: f64, base: LogBase) -> Result<ChangReport> {
    let spec = spectrum(x, gamma)?;
    let dim = Subspace::span(&spec).dim();
    let ctx = x.ctx();
    let bound = 8.0 / (gamma * gamma) * base.log(ctx.order() as f64 / x.len() as f64);
    let slack = bound - dim as f64;
    Ok(ChangReport {
        gamma,
        size_x: x.len(),
        spec_size: spec.len(),
        dim,
        bound,
        slack,
        log_base: base,
        violated: slack < -1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn ctx(p: u64, n: u32) -> GroupCtx {
        GroupCtx::new(p, n).unwrap()
    }

    fn random_fn(c: GroupCtx, r: &mut impl Rng) -> DensityFn {
        DensityFn::from_values(c, (0..c.order()).map(|_| r.gen::<f64>()).collect()).unwrap()
    }

    #[test]
    fn density_examples() {
        let c = ctx(3, 2);
        let d = density(&FpSet::full(c)).unwrap();
        assert!(d.values().iter().all(|&v| v == 1.0));
        let c1 = ctx(2, 1);
        assert_eq!(density(&FpSet::singleton(c1, 0)).unwrap().values(), &[2.0, 0.0]);
        let a = FpSet::from_indices(c, [1, 5, 7]).unwrap();
        assert!((density(&a).unwrap().mean() - 1.0).abs() < 1e-15);
        assert!(density(&FpSet::empty(c)).is_err());
    }

    #[test]
    fn convolution_examples() {
        let c = ctx(3, 2);
        let a = FpSet::from_indices(c, [0, 4, 5]).unwrap();
        let one = DensityFn::constant(c, 1.0);
        let r = convolve(&density(&a).unwrap(), &one).unwrap();
        assert!(r.values().iter().all(|v| (v - 1.0).abs() < 1e-12));

        let w = Subspace::from_rows(c, [[1u32, 2]]).to_set();
        let r = convolve(&density(&w).unwrap(), &DensityFn::indicator(&w)).unwrap();
        let ind = DensityFn::indicator(&w);
        for x in 0..c.order() {
            assert!((r.at(x) - ind.at(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn point_mass_convolution_is_translation() {
        // (ρ_x * f)(a) = f(a − x), exhaustively at p = 3, n = 2
        let c = ctx(3, 2);
        let mut r = rng::stream(3, 0);
        let f = random_fn(c, &mut r);
        for x in 0..c.order() {
            let lhs = convolve_direct(&density(&FpSet::singleton(c, x)).unwrap(), &f).unwrap();
            for a in 0..c.order() {
                assert!((lhs.at(a) - f.at(c.sub(a, x))).abs() < 1e-12);
            }
            assert_eq!(f.translate(x).values(), (0..9).map(|a| f.at(c.sub(a, x))).collect::<Vec<_>>());
        }
        // for symmetric f the reversed form also holds
        let s = DensityFn::indicator(
            &crate::setops::difference_set(
                &FpSet::from_indices(c, [0, 1, 4]).unwrap(),
                &FpSet::from_indices(c, [0, 1, 4]).unwrap(),
            )
            .unwrap(),
        );
        for x in 0..c.order() {
            let lhs = convolve_direct(&density(&FpSet::singleton(c, x)).unwrap(), &s).unwrap();
            for a in 0..c.order() {
                assert!((lhs.at(a) - s.at(c.sub(x, a))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let c = ctx(2, 3);
        let a = FpSet::from_indices(c, [1, 2, 7]).unwrap();
        let one = DensityFn::constant(c, 1.0);
        assert!((fn_inner(&density(&a).unwrap(), &one).unwrap() - 1.0).abs() < 1e-15);
        let ia = DensityFn::indicator(&a);
        assert!((fn_inner(&ia, &ia).unwrap() - 3.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_membership_identity() {
        // ⟨ρ_x * ρ_A * 1_{A−A}, ρ_A⟩ = Pr_{a,b∈A}[a − b − x ∈ A − A]
        let c = ctx(2, 3);
        let mut r = rng::stream(4, 0);
        for _ in 0..50 {
            let mut a = FpSet::from_fn(c, |_| r.gen_bool(0.4));
            if a.is_empty() {
                a.insert(r.gen_range(0..8));
            }
            let x = r.gen_range(0..8usize);
            let dd = crate::setops::difference_set(&a, &a).unwrap();
            let rho_a = density(&a).unwrap();
            let lhs_fn = convolve(
                &density(&FpSet::singleton(c, x)).unwrap(),
                &convolve(&rho_a, &DensityFn::indicator(&dd)).unwrap(),
            )
            .unwrap();
            let lhs = fn_inner(&lhs_fn, &rho_a).unwrap();
            let mut hits = 0usize;
            for s in a.iter() {
                for t in a.iter() {
                    if dd.contains(c.sub(c.sub(s, t), x)) {
                        hits += 1;
                    }
                }
            }
            let rhs = hits as f64 / (a.len() * a.len()) as f64;
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn transform_examples() {
        let c = ctx(3, 2);
        let t = transform_set(&FpSet::full(c)).unwrap();
        assert!((t.at(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(t.coeffs()[1..].iter().all(|z| z.norm() < 1e-12));
        let t = transform_set(&FpSet::singleton(c, 0)).unwrap();
        assert!(t.coeffs().iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-12));
        let w = Subspace::from_rows(c, [[1u32, 1]]);
        let perp = w.orthogonal_complement().to_set();
        let t = transform_set(&w.to_set()).unwrap();
        for u in 0..c.order() {
            let expect = if perp.contains(u) { 1.0 } else { 0.0 };
            assert!((t.at(u) - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
        assert!(transform_set(&FpSet::empty(c)).is_err());
    }

    #[test]
    fn fast_and_direct_agree() {
        let mut r = rng::stream(8, 0);
        for (p, n) in [(2u64, 5u32), (3, 3), (5, 2), (7, 2), (11, 1)] {
            let c = ctx(p, n);
            let f = random_fn(c, &mut r);
            let (a, b) = (transform(&f), transform_direct(&f));
            for u in 0..c.order() {
                assert!((a.at(u) - b.at(u)).norm() < 1e-12);
            }
            let g = random_fn(c, &mut r);
            let (x, y) = (convolve_direct(&f, &g).unwrap(), convolve_fft(&f, &g).unwrap());
            for i in 0..c.order() {
                assert!((x.at(i) - y.at(i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let c = ctx(3, 2);
        let w = Subspace::from_rows(c, [[1u32, 2]]);
        for g in [0.1, 0.5, 1.0] {
            assert_eq!(spectrum(&w.to_set(), g).unwrap(), w.orthogonal_complement().to_set());
        }
        assert_eq!(spectrum(&FpSet::full(c), 0.5).unwrap().to_vec(), vec![0]);
        assert!(spectrum(&FpSet::full(c), 0.0).is_err());
        assert!(spectrum(&FpSet::full(c), 1.5).is_err());
    }

    #[test]
    fn spectrum_matches_scalar_recomputation() {
        let c = ctx(2, 3);
        let mut r = rng::stream(12, 0);
        for _ in 0..30 {
            let idx = rand::seq::index::sample(&mut r, 8, 4);
            let x = FpSet::from_indices(c, idx.iter()).unwrap();
            let spec = spectrum(&x, 0.5).unwrap();
            for u in 0..8 {
                // X̂(u) for p = 2 is a real average of ±1
                let s: i32 = x.iter().map(|e| if c.inner(u, e) == 0 { 1 } else { -1 }).sum();
                let mag = (s as f64 / 4.0).abs();
                assert_eq!(spec.contains(u), mag >= 0.5, "u = {u}");
            }
            assert!(spec.contains(0));
        }
    }

    #[test]
    fn chang_examples() {
        let c = ctx(3, 3);
        let r = chang_check(&FpSet::full(c), 0.5, LogBase::Natural).unwrap();
        assert_eq!((r.dim, r.bound, r.slack), (0, 0.0, 0.0));
        for k in 0..=3usize {
            let rows: Vec<Vec<u32>> = (k..3).map(|i| {
                let mut v = vec![0; 3];
                v[i] = 1;
                v
            }).collect();
            let w = Subspace::from_rows(c, rows);
            for g in [0.3, 0.5, 1.0] {
                let r = chang_check(&w.to_set(), g, LogBase::Natural).unwrap();
                assert_eq!(r.dim, k);
                assert!(!r.violated);
            }
        }
        let r = chang_check(&FpSet::singleton(c, 0), 0.5, LogBase::Two).unwrap();
        assert_eq!(r.log_base.name(), "2");
        assert!((r.bound - 32.0 * 27f64.log2()).abs() < 1e-9);
    }
}
