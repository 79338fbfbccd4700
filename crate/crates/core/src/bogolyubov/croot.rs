use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Budget, LabError, Result};
use crate::fourier::DensityFn;
use crate::fpn::{FpSet, GroupCtx};
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct CrootConfig {
    pub q: f64,
    pub eps: f64,
    /// Tuples count as good when their deviation is at most c_const·eps/2.
    pub c_const: f64,
    pub trials: usize,
    /// Number of distinct good tuple classes the pigeonhole step examines.
    pub max_classes: usize,
    pub budget: Budget,
}

impl Default for CrootConfig {
    fn default() -> Self {
        CrootConfig {
            q: 2.0,
            eps: 0.25,
            c_const: 2.0,
            trials: 200,
            max_classes: 16,
            budget: Budget::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PigeonholeReport {
    pub classes_examined: usize,
    /// The translation class c (normalized so c_1 = 0) with the most good
    /// translates inside A^ℓ.
    pub best_class: Vec<usize>,
    /// X = {x : c + x is good} − x_0.
    pub shift_set: FpSet,
    /// max over x ∈ X of ‖ρ_x*ρ_A*f − ρ_A*f‖_q.
    pub max_shift_norm: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrootReport {
    pub ell: usize,
    pub q: f64,
    pub eps: f64,
    pub c_const: f64,
    pub threshold: f64,
    pub trials: usize,
    pub successes: usize,
    pub success_fraction: f64,
    pub mean_deviation: f64,
    pub max_deviation: f64,
    pub pigeonhole: Option<PigeonholeReport>,
}

/// ρ_A*f(y) = E_{a∈A} f(y − a).
fn smoothed(a: &[usize], f: &DensityFn) -> Vec<f64> {
    let ctx = f.ctx();
    let inv = 1.0 / a.len() as f64;
    par::map_range(ctx.order(), |y| {
        a.iter().map(|&s| f.at(ctx.sub(y, s))).sum::<f64>() * inv
    })
}

/// ‖g − (1/ℓ) Σ_i f(· − t_i)‖_q where g(y) = base(y − shift).
fn deviation(ctx: GroupCtx, base: &[f64], shift: usize, tuple: &[usize], f: &DensityFn, q: f64) -> f64 {
    let inv = 1.0 / tuple.len() as f64;
    let sum: f64 = (0..ctx.order())
        .map(|y| {
            let avg = tuple.iter().map(|&t| f.at(ctx.sub(y, t))).sum::<f64>() * inv;
            (base[ctx.sub(y, shift)] - avg).abs().powf(q)
        })
        .sum();
    (sum / ctx.order() as f64).powf(1.0 / q)
}

/// Monte-Carlo view of the Croot–Sisask sampling step together with the
/// pigeonhole extraction of a large shift set.
pub fn croot_sisask_trial<R: Rng>(
    a: &FpSet,
    f: &DensityFn,
    config: &CrootConfig,
    rng: &mut R,
) -> Result<CrootReport> {
    let ctx = a.ctx();
    ctx.ensure_same(&f.ctx())?;
    if a.is_empty() {
        return Err(LabError::EmptySet("A"));
    }
    if f.values().iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(LabError::InvalidArgument("f must take values in [0, 1]".into()));
    }
    if !(config.q >= 1.0) || !(config.eps > 0.0) || !(config.c_const > 0.0) {
        return Err(LabError::InvalidArgument(
            "q must be at least 1 and eps, C positive".into(),
        ));
    }
    let ell = (config.q / (config.eps * config.eps)).ceil() as usize;
    let nn = ctx.order() as u128;
    let sample_cost = ell as u128 * config.trials as u128 * nn;
    let class_cost =
        config.max_classes as u128 * ell as u128 * nn * (1 + a.len() as u128);
    config
        .budget
        .check("croot_sisask_trial", sample_cost + class_cost)?;

    let elems = a.to_vec();
    let base = smoothed(&elems, f);
    let threshold = config.c_const * config.eps / 2.0;
    let mut devs = Vec::with_capacity(config.trials);
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..config.trials {
        let x = rng.gen_range(0..ctx.order());
        let tuple: Vec<usize> = (0..ell).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
        let shifted: Vec<usize> = tuple.iter().map(|&t| ctx.add(t, x)).collect();
        let d = deviation(ctx, &base, x, &shifted, f, config.q);
        if d <= threshold && classes.len() < config.max_classes {
            classes.insert(tuple.iter().map(|&t| ctx.sub(t, tuple[0])).collect());
        }
        devs.push(d);
    }
    let successes = devs.iter().filter(|&&d| d <= threshold).count();
    let trials = devs.len();
    let pigeonhole = if classes.is_empty() {
        None
    } else {
        Some(pigeonhole(a, f, &base, &classes, threshold, config))
    };
    Ok(CrootReport {
        ell,
        q: config.q,
        eps: config.eps,
        c_const: config.c_const,
        threshold,
        trials,
        successes,
        success_fraction: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
        mean_deviation: if trials == 0 { 0.0 } else { devs.iter().sum::<f64>() / trials as f64 },
        max_deviation: devs.iter().cloned().fold(0.0, f64::max),
        pigeonhole,
    })
}

fn pigeonhole(
    a: &FpSet,
    f: &DensityFn,
    base: &[f64],
    classes: &BTreeSet<Vec<usize>>,
    threshold: f64,
    config: &CrootConfig,
) -> PigeonholeReport {
    let ctx = a.ctx();
    let mut best: Option<(Vec<usize>, FpSet)> = None;
    for class in classes {
        let good = FpSet::from_fn(ctx, |x| {
            let tuple: Vec<usize> = class.iter().map(|&c| ctx.add(c, x)).collect();
            tuple.iter().all(|&t| a.contains(t))
                && deviation(ctx, base, 0, &tuple, f, config.q) <= threshold
        });
        if best.as_ref().map_or(true, |(_, b)| good.len() > b.len()) {
            best = Some((class.clone(), good));
        }
    }
    let (best_class, good) = best.expect("at least one class");
    let x0 = good.min().unwrap_or(0);
    let shift_set = good.translate(ctx.neg(x0));
    let base_fn = DensityFn::from_values(ctx, base.to_vec()).expect("length matches");
    let max_shift_norm = shift_set
        .iter()
        .map(|x| base_fn.translate(x).sub(&base_fn).expect("same ctx").norm(config.q))
        .fold(0.0, f64::max);
    let bound = config.c_const * config.eps;
    PigeonholeReport {
        classes_examined: classes.len(),
        best_class,
        shift_set,
        max_shift_norm,
        bound,
        holds: max_shift_norm <= bound + 1e-12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::rng;

    #[test]
    fn constant_function_has_zero_deviation() {
        let c = GroupCtx::new(2, 4).unwrap();
        let a = instances::random_set(c, 5, &mut rng::stream(1, 0));
        let f = DensityFn::constant(c, 0.3);
        let r = croot_sisask_trial(&a, &f, &CrootConfig::default(), &mut rng::stream(1, 1)).unwrap();
        assert!(r.max_deviation < 1e-12);
        assert_eq!(r.successes, r.trials);
        let ph = r.pigeonhole.unwrap();
        assert!(ph.holds && ph.max_shift_norm < 1e-12);
    }

    #[test]
    fn full_group_deviations_shrink_with_ell() {
        let c = GroupCtx::new(3, 2).unwrap();
        let a = FpSet::full(c);
        let f = instances::random_fn(c, &mut rng::stream(3, 0));
        let mut means = Vec::new();
        for eps in [1.0, 0.5, 0.25] {
            let cfg = CrootConfig { eps, trials: 300, ..CrootConfig::default() };
            let r = croot_sisask_trial(&a, &f, &cfg, &mut rng::stream(3, 1)).unwrap();
            means.push(r.mean_deviation);
        }
        assert!(means[0] > means[1] && means[1] > means[2], "{means:?}");
    }

    #[test]
    fn markov_step_at_small_scale() {
        let c = GroupCtx::new(2, 5).unwrap();
        let mut r = rng::stream(17, 0);
        let a = instances::random_set(c, 8, &mut r);
        let f = DensityFn::indicator(&instances::random_set(c, 16, &mut r));
        let rep = croot_sisask_trial(&a, &f, &CrootConfig::default(), &mut r).unwrap();
        assert_eq!(rep.ell, 32);
        assert!(rep.success_fraction >= 0.5);
        let ph = rep.pigeonhole.unwrap();
        assert!(ph.shift_set.contains(0));
        assert!(ph.holds);
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = GroupCtx::new(2, 3).unwrap();
        let a = FpSet::singleton(c, 0);
        let f = DensityFn::constant(c, 2.0);
        assert!(croot_sisask_trial(&a, &f, &CrootConfig::default(), &mut rng::stream(0, 0)).is_err());
        let f = DensityFn::constant(c, 0.5);
        let cfg = CrootConfig { budget: Budget(10), ..CrootConfig::default() };
        assert!(matches!(
            croot_sisask_trial(&a, &f, &cfg, &mut rng::stream(0, 0)),
            Err(LabError::BudgetExceeded { .. })
        ));
    }
}
