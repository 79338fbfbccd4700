use std::time::Instant;

use additive_lab::bogolyubov::{
    croot_sisask_trial, gentle_shift_set, lemma_thespace_check, quasi_pfr,
    shift_closure_check, BrzConfig, CrootConfig,
};
use additive_lab::fourier::{chang_check, DensityFn, LogBase};
use additive_lab::lintest::{
    accept_prob, best_linear_agreement, soundness_sweep, AgreementMode,
};
use additive_lab::nmc::{
    family_distance, joint_dist, nm_metric, search_affine_evasive, SearchMode, TamperPair,
};
use additive_lab::{instances, par, rng, setops, Budget, FpSet, GroupCtx, LabError, LinearMap};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::config::{self, Command, ConfigError, ExperimentConfig, LogBaseArg, ModeArg};
use crate::io::{self, FileError};
use crate::report::{big, float, int, ratio, Report, RngInfo, Timing, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    File(#[from] FileError),
}

impl RunError {
    fn kind(&self) -> &'static str {
        match self {
            RunError::Lab(LabError::BudgetExceeded { .. }) => "budget_exceeded",
            RunError::Lab(_) => "runtime",
            RunError::File(_) => "input_file",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Identity,
    Constant(Option<(usize, usize)>),
    Affine,
    Permutation,
    Coordinatewise,
    Random,
}

pub fn parse_family(s: &str) -> Result<Family, ConfigError> {
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let fam = match (head, arg) {
        ("identity", None) => Family::Identity,
        ("constant", None) => Family::Constant(None),
        ("constant", Some(a)) => {
            let parts: Vec<&str> = a.split(',').collect();
            let nums: Option<Vec<usize>> = parts.iter().map(|t| t.trim().parse().ok()).collect();
            match nums.as_deref() {
                Some([c1, c2]) => Family::Constant(Some((*c1, *c2))),
                _ => return Err(ConfigError(format!("constant family expects two element indices, got {a:?}"))),
            }
        }
        ("affine", None) => Family::Affine,
        ("permutation", None) => Family::Permutation,
        ("coordinatewise", None) => Family::Coordinatewise,
        ("random", None) => Family::Random,
        _ => return Err(ConfigError(format!("unknown tampering family {s:?}"))),
    };
    Ok(fam)
}

fn random_matrix<R: Rng>(ctx: GroupCtx, rng: &mut R) -> LinearMap {
    let n = ctx.dim();
    let entries = (0..n * n).map(|_| rng.gen_range(0..ctx.p())).collect();
    LinearMap::new(ctx.p(), n, n, entries).expect("entries in range")
}

fn coordinate_tables<R: Rng>(p: u32, rng: &mut R) -> (Vec<u32>, Vec<u32>) {
    let mut t = || (0..p).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>();
    let h1 = t();
    (h1, t())
}

fn build_pair<R: Rng>(family: &Family, ctx: GroupCtx, rng: &mut R) -> Result<TamperPair, LabError> {
    match family {
        Family::Identity => Ok(TamperPair::identity(ctx)),
        Family::Constant(c) => {
            let (c1, c2) = c.unwrap_or((1, 1));
            TamperPair::constant(ctx, c1, c2)
        }
        Family::Affine => {
            let m1 = random_matrix(ctx, rng);
            let m2 = random_matrix(ctx, rng);
            let c1 = rng.gen_range(0..ctx.order());
            let c2 = rng.gen_range(0..ctx.order());
            TamperPair::affine(ctx, &m1, c1, &m2, c2)
        }
        Family::Permutation => {
            let mut s: Vec<usize> = (0..ctx.dim()).collect();
            let mut t = s.clone();
            s.shuffle(rng);
            t.shuffle(rng);
            TamperPair::permutation(ctx, &s, &t)
        }
        Family::Coordinatewise => {
            let (h1, h2) = coordinate_tables(ctx.p(), rng);
            TamperPair::coordinatewise(ctx, &h1, &h2)
        }
        Family::Random => Ok(TamperPair::random(ctx, rng)),
    }
}

struct Outcome {
    records: Vec<Value>,
    summary: Value,
    error: Option<Value>,
}

fn error_record(instance: Option<usize>, e: &RunError) -> Value {
    json!({
        "kind": e.kind(),
        "instance": instance.map(|i| int(i as u64)),
        "message": e.to_string(),
    })
}

/// Runs `count` independent instances, possibly in parallel, and keeps the
/// records in instance order up to the first failure.
fn run_instances<S, F>(count: usize, f: F) -> (Vec<Value>, Vec<S>, Option<Value>)
where
    S: Send,
    F: Fn(usize) -> Result<(Vec<Value>, S), RunError> + Sync + Send,
{
    let results = par::map_range(count, f);
    let mut records = Vec::new();
    let mut stats = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((recs, s)) => {
                records.extend(recs);
                stats.push(s);
            }
            Err(e) => return (records, stats, Some(error_record(Some(i), &e))),
        }
    }
    (records, stats, None)
}

fn load_set_for(ctx: GroupCtx, path: &std::path::Path) -> Result<FpSet, RunError> {
    let s = io::load_set(path)?;
    if s.ctx() != ctx {
        return Err(LabError::CtxMismatch {
            left_p: ctx.p(),
            left_n: ctx.n(),
            right_p: s.ctx().p(),
            right_n: s.ctx().n(),
        }
        .into());
    }
    Ok(s)
}

/// Loads the optional input set up front so that a bad file yields one
/// error record instead of one per instance.
fn preload(ctx: GroupCtx, path: &Option<std::path::PathBuf>) -> Result<Option<FpSet>, RunError> {
    path.as_deref().map(|p| load_set_for(ctx, p)).transpose()
}

fn failed(e: RunError) -> Outcome {
    Outcome {
        records: Vec::new(),
        summary: json!({}),
        error: Some(error_record(None, &e)),
    }
}

fn brz_verify(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::BrzVerify) -> Outcome {
    let input = match preload(ctx, &k.set) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    let max_doubling = config::parse_ratio(&k.max_doubling).expect("validated");
    let brz_cfg = BrzConfig {
        thresholds: k.thresholds.clone(),
        budget: Budget(cfg.budget),
    };
    let count = if input.is_some() { 1 } else { k.instances };
    let (records, stats, error) = run_instances(count, |i| {
        let a = match &input {
            Some(s) => s.clone(),
            None => instances::small_doubling_set(ctx, max_doubling, &mut rng::stream(cfg.seed, i as u64)),
        };
        let d = setops::doubling(&a)?;
        let q = quasi_pfr(&a, &brz_cfg)?;
        let r = &q.brz;
        let attempts: Vec<Value> = r
            .attempts
            .iter()
            .map(|t| {
                json!({
                    "threshold": float(t.threshold, 0.0),
                    "gentle_size": int(t.gentle_size as u64),
                    "dim": int(t.dim as u64),
                    "contained": t.contained,
                })
            })
            .collect();
        let rec = json!({
            "instance": int(i as u64),
            "size_a": int(a.len() as u64),
            "doubling": ratio(&d.k),
            "dim": int(r.v.dim() as u64),
            "size_v": int(r.v.size() as u64),
            "method": r.method.name(),
            "contained": r.contained,
            "size_ratio": ratio(&r.size_ratio),
            "attempts": attempts,
            "quasi_pfr": {
                "coset_rep": int(q.coset_rep as u64),
                "size_b": int(q.b.len() as u64),
                "span_b_dim": int(q.span_b.dim() as u64),
                "cosets_meeting": int(q.cosets_meeting as u64),
                "b_ratio": ratio(&q.b_ratio),
                "span_ratio": ratio(&q.span_ratio),
            },
        });
        Ok((vec![rec], (r.contained, r.method.name(), r.size_ratio)))
    });
    let pipeline = stats.iter().filter(|s| s.1 == "pipeline").count();
    let summary = json!({
        "instances": int(stats.len() as u64),
        "all_contained": stats.iter().all(|s| s.0),
        "pipeline": int(pipeline as u64),
        "brute_force": int((stats.len() - pipeline) as u64),
        "min_size_ratio": stats.iter().map(|s| s.2).min().map(|r| ratio(&r)),
    });
    Outcome { records, summary, error }
}

fn chang_scan(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::ChangScan) -> Outcome {
    let input = match preload(ctx, &k.set) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    let base = match k.log_base {
        LogBaseArg::E => LogBase::Natural,
        LogBaseArg::Two => LogBase::Two,
    };
    let count = if input.is_some() { 1 } else { k.instances };
    let (records, stats, error) = run_instances(count, |i| {
        let x = match &input {
            Some(s) => s.clone(),
            None => instances::random_nonempty_set(ctx, &mut rng::stream(cfg.seed, i as u64)),
        };
        let mut recs = Vec::new();
        let mut st = Vec::new();
        for &g in &k.gammas {
            let r = chang_check(&x, g, base)?;
            recs.push(json!({
                "instance": int(i as u64),
                "gamma": float(g, 0.0),
                "size_x": int(r.size_x as u64),
                "spec_size": int(r.spec_size as u64),
                "dim": int(r.dim as u64),
                "bound": float(r.bound, 1e-9),
                "slack": float(r.slack, 1e-9),
                "log_base": r.log_base.name(),
                "violated": r.violated,
            }));
            st.push((r.violated, r.slack));
        }
        Ok((recs, st))
    });
    let flat: Vec<(bool, f64)> = stats.into_iter().flatten().collect();
    let summary = json!({
        "checks": int(flat.len() as u64),
        "violations": int(flat.iter().filter(|s| s.0).count() as u64),
        "min_slack": flat.iter().map(|s| s.1).reduce(f64::min).map(|v| float(v, 1e-9)),
    });
    Outcome { records, summary, error }
}

fn plunnecke_scan(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::PlunneckeScan) -> Outcome {
    let input = match preload(ctx, &k.set) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    let count = if input.is_some() { 1 } else { k.instances };
    let (records, stats, error) = run_instances(count, |i| {
        let a = match &input {
            Some(s) => s.clone(),
            None => instances::random_nonempty_set(ctx, &mut rng::stream(cfg.seed, i as u64)),
        };
        let r = setops::plunnecke_check(&a, k.kmax)?;
        let min = r.min_margin().cloned();
        let rec = json!({
            "instance": int(i as u64),
            "size_a": int(a.len() as u64),
            "doubling": ratio(&r.doubling.k),
            "pairs_checked": int(r.entries.len() as u64),
            "violations": r.violations.iter().map(|(a, b)| json!([int(*a as u64), int(*b as u64)])).collect::<Vec<_>>(),
            "min_margin": min.as_ref().map(big),
        });
        Ok((vec![rec], (r.violations.len(), min)))
    });
    let summary = json!({
        "instances": int(stats.len() as u64),
        "violations": int(stats.iter().map(|s| s.0 as u64).sum::<u64>()),
        "min_margin": stats.iter().filter_map(|s| s.1.clone()).min().as_ref().map(big),
    });
    Outcome { records, summary, error }
}

fn shiftset_scan(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::ShiftsetScan) -> Outcome {
    let input = match preload(ctx, &k.set) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    let max_doubling = config::parse_ratio(&k.max_doubling).expect("validated");
    let count = if input.is_some() { 1 } else { k.instances };
    let budget = Budget(cfg.budget);
    let (records, stats, error) = run_instances(count, |i| {
        let a = match &input {
            Some(s) => s.clone(),
            None => instances::small_doubling_set(ctx, max_doubling, &mut rng::stream(cfg.seed, i as u64)),
        };
        let x = gentle_shift_set(&a, k.threshold)?;
        let closure = shift_closure_check(&a, &x, k.t_max, k.closure_threshold)?;
        let levels: Vec<Value> = closure
            .levels
            .iter()
            .map(|l| {
                json!({
                    "t": int(l.t as u64),
                    "size_tx": int(l.size_tx as u64),
                    "min_value": ratio(&l.min_value),
                    "holds": l.holds,
                })
            })
            .collect();
        let mut lemma = Vec::new();
        let mut lemma_ok = true;
        for t in 1..=k.t_max {
            let r = lemma_thespace_check(&a, &x, t, budget)?;
            lemma_ok &= r.holds && r.fourier_agrees;
            lemma.push(json!({
                "t": int(t as u64),
                "dim_v": int(r.v.dim() as u64),
                "difference": big(&r.difference),
                "bound": big(&r.bound),
                "holds": r.holds,
                "fourier_gap": float(r.fourier_gap, 1e-9),
                "fourier_agrees": r.fourier_agrees,
            }));
        }
        let rec = json!({
            "instance": int(i as u64),
            "size_a": int(a.len() as u64),
            "size_x": int(x.len() as u64),
            "threshold": float(k.threshold, 0.0),
            "closure_threshold": float(k.closure_threshold, 0.0),
            "closure": levels,
            "averaging": lemma,
        });
        Ok((vec![rec], (closure.all_hold(), lemma_ok)))
    });
    let summary = json!({
        "instances": int(stats.len() as u64),
        "closure_holds": int(stats.iter().filter(|s| s.0).count() as u64),
        "averaging_holds": int(stats.iter().filter(|s| s.1).count() as u64),
    });
    Outcome { records, summary, error }
}

fn croot_trial(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::CrootTrial) -> Outcome {
    let input = match preload(ctx, &k.set) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    let ccfg = CrootConfig {
        q: k.q,
        eps: k.eps,
        c_const: k.c_const,
        trials: k.trials,
        max_classes: k.max_classes,
        budget: Budget(cfg.budget),
    };
    let count = if input.is_some() { 1 } else { k.instances };
    let (records, stats, error) = run_instances(count, |i| {
        let mut r = rng::stream(cfg.seed, i as u64);
        let a = match &input {
            Some(s) => s.clone(),
            None => instances::random_set(ctx, k.size, &mut r),
        };
        let f = DensityFn::indicator(&instances::random_set(ctx, ctx.order() / 2, &mut r));
        let rep = croot_sisask_trial(&a, &f, &ccfg, &mut r)?;
        let ph = rep.pigeonhole.as_ref().map(|ph| {
            json!({
                "classes_examined": int(ph.classes_examined as u64),
                "shift_set_size": int(ph.shift_set.len() as u64),
                "max_shift_norm": float(ph.max_shift_norm, 1e-12),
                "bound": float(ph.bound, 1e-12),
                "holds": ph.holds,
            })
        });
        let frac = Ratio::new(rep.successes as u64, rep.trials.max(1) as u64);
        let rec = json!({
            "instance": int(i as u64),
            "size_a": int(a.len() as u64),
            "ell": int(rep.ell as u64),
            "threshold": float(rep.threshold, 1e-12),
            "trials": int(rep.trials as u64),
            "successes": int(rep.successes as u64),
            "success_fraction": ratio(&frac),
            "mean_deviation": float(rep.mean_deviation, 1e-12),
            "max_deviation": float(rep.max_deviation, 1e-12),
            "pigeonhole": ph,
        });
        Ok((vec![rec], (frac, rep.pigeonhole.map(|p| p.holds))))
    });
    let summary = json!({
        "instances": int(stats.len() as u64),
        "min_success_fraction": stats.iter().map(|s| s.0).min().map(|r| ratio(&r)),
        "pigeonhole_holds": int(stats.iter().filter(|s| s.1 == Some(true)).count() as u64),
    });
    Outcome { records, summary, error }
}

fn distance_record(pair_label: &str, r: &additive_lab::nmc::FamilyDistanceResult) -> Value {
    let p = r.p as usize;
    let support: Vec<Value> = r
        .d
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(j, w)| json!({"a": int((j / p) as u64), "b": int((j % p) as u64), "weight": big(w)}))
        .collect();
    json!({
        "family": pair_label,
        "distance": big(&r.distance),
        "distance_approx": float(r.distance.to_f64().unwrap_or(f64::NAN), 1e-15),
        "d_support": support,
        "dual_bound": big(&r.dual_bound),
        "dual_feasible": r.dual_feasible,
        "certified": r.certified(),
        "pivots": int(r.pivots as u64),
    })
}

fn nmc_distance(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::NmcDistance) -> Outcome {
    let family = parse_family(&k.family).expect("validated");
    let budget = Budget(cfg.budget);
    let (records, stats, error) = run_instances(k.instances, |i| {
        let pair = build_pair(&family, ctx, &mut rng::stream(cfg.seed, i as u64))?;
        let r = family_distance(&joint_dist(&pair, budget)?)?;
        let mut rec = distance_record(&k.family, &r);
        rec["instance"] = int(i as u64);
        Ok((vec![rec], (r.distance.clone(), r.certified())))
    });
    let summary = json!({
        "instances": int(stats.len() as u64),
        "max_distance": stats.iter().map(|s| s.0.clone()).max().as_ref().map(big),
        "all_certified": stats.iter().all(|s| s.1),
    });
    Outcome { records, summary, error }
}

fn nmc_sweep(cfg: &ExperimentConfig, k: &config::NmcSweep) -> Outcome {
    let family = parse_family(&k.family).expect("validated");
    let budget = Budget(cfg.budget);
    let p = cfg.p as u32;
    let evasive = match search_affine_evasive(p, k.evasive_size, SearchMode::Exhaustive, &mut rng::stream(cfg.seed, 0), budget) {
        Ok(s) => s,
        Err(e) => return failed(e.into()),
    };
    let tables = coordinate_tables(p, &mut rng::stream(cfg.seed, 1));
    let (records, stats, error) = run_instances(k.n_values.len(), |j| {
        let n = k.n_values[j];
        let ctx = GroupCtx::new(cfg.p, n)?;
        let pair = match family {
            Family::Coordinatewise => TamperPair::coordinatewise(ctx, &tables.0, &tables.1)?,
            _ => build_pair(&family, ctx, &mut rng::stream(cfg.seed, 2 + j as u64))?,
        };
        let nm = nm_metric(&pair, &evasive, budget)?;
        let fd = family_distance(&joint_dist(&pair, budget)?)?;
        let rec = json!({
            "n": int(n),
            "nm_metric": big(&nm.value),
            "arg_max_pair": [int(nm.pair.0 as u64), int(nm.pair.1 as u64)],
            "distance": big(&fd.distance),
            "certified": fd.certified(),
        });
        Ok((vec![rec], nm.value))
    });
    let trend = stats.windows(2).all(|w| w[1] <= w[0]);
    let summary = json!({
        "evasive_set": evasive.elements().iter().map(|&e| int(e)).collect::<Vec<_>>(),
        "evasive_profile": int(evasive.profile() as u64),
        "coordinate_maps": [tables.0.iter().map(|&e| int(e)).collect::<Vec<_>>(), tables.1.iter().map(|&e| int(e)).collect::<Vec<_>>()],
        "nm_non_increasing": trend,
    });
    Outcome { records, summary, error }
}

fn lintest(cfg: &ExperimentConfig, ctx: GroupCtx, k: &config::Lintest) -> Outcome {
    let budget = Budget(cfg.budget);
    let mut r = rng::stream(cfg.seed, 0);
    if let Some(path) = &k.fn_file {
        let mut go = || -> Result<Outcome, RunError> {
            let f = io::load_fn(path)?;
            if f.ctx() != ctx {
                return Err(LabError::InvalidArgument("function file group differs from --p/--n".into()).into());
            }
            let acc = accept_prob(&f, budget)?;
            let ag = best_linear_agreement(&f, AgreementMode::Auto { samples: k.samples }, budget, &mut r)?;
            let rec = json!({
                "accept": ratio(&acc),
                "agreement": ratio(&ag.agreement),
                "matrix": ag.matrix.entries().iter().map(|&e| int(e)).collect::<Vec<_>>(),
                "exhaustive": ag.exhaustive,
                "miss_probability": ag.miss_probability.map(|m| float(m, 0.0)),
            });
            Ok(Outcome {
                summary: json!({"accept": ratio(&acc), "agreement": ratio(&ag.agreement)}),
                records: vec![rec],
                error: None,
            })
        };
        return go().unwrap_or_else(failed);
    }
    match soundness_sweep(ctx, &k.corrupt, k.trials, k.samples, &mut r, budget) {
        Ok(points) => {
            let records = points
                .iter()
                .map(|pt| {
                    json!({
                        "rate": float(pt.rate, 0.0),
                        "trial": int(pt.trial as u64),
                        "accept": ratio(&pt.accept),
                        "agreement": ratio(&pt.agreement),
                        "exhaustive": pt.exhaustive,
                    })
                })
                .collect();
            let per_rate: Vec<Value> = k
                .corrupt
                .iter()
                .map(|&rate| {
                    let sel: Vec<_> = points.iter().filter(|p| p.rate == rate).collect();
                    let mean = |f: &dyn Fn(&additive_lab::lintest::SweepPoint) -> Ratio<u64>| {
                        sel.iter().map(|p| { let v = f(p); *v.numer() as f64 / *v.denom() as f64 }).sum::<f64>() / sel.len().max(1) as f64
                    };
                    json!({
                        "rate": float(rate, 0.0),
                        "mean_accept": float(mean(&|p| p.accept), 1e-12),
                        "mean_agreement": float(mean(&|p| p.agreement), 1e-12),
                    })
                })
                .collect();
            Outcome {
                records,
                summary: json!({ "per_rate": per_rate }),
                error: None,
            }
        }
        Err(e) => failed(e.into()),
    }
}

fn evasive_search(cfg: &ExperimentConfig, k: &config::EvasiveSearch) -> Outcome {
    let mode = match k.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Greedy => SearchMode::Greedy,
    };
    match search_affine_evasive(cfg.p as u32, k.size, mode, &mut rng::stream(cfg.seed, 0), Budget(cfg.budget)) {
        Ok(s) => {
            let rec = json!({
                "elements": s.elements().iter().map(|&e| int(e)).collect::<Vec<_>>(),
                "profile": int(s.profile() as u64),
            });
            Outcome {
                summary: json!({"profile": int(s.profile() as u64)}),
                records: vec![rec],
                error: None,
            }
        }
        Err(e) => failed(e.into()),
    }
}

/// Runs one experiment. Invalid configurations are rejected up front;
/// runtime failures produce a partial report whose `error` field is set.
pub fn run(config: &ExperimentConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let start = Instant::now();
    let ctx = GroupCtx::new(config.p, config.n).map_err(|e| ConfigError(e.to_string()))?;
    let out = match &config.command {
        Command::BrzVerify(k) => brz_verify(config, ctx, k),
        Command::ChangScan(k) => chang_scan(config, ctx, k),
        Command::PlunneckeScan(k) => plunnecke_scan(config, ctx, k),
        Command::ShiftsetScan(k) => shiftset_scan(config, ctx, k),
        Command::CrootTrial(k) => croot_trial(config, ctx, k),
        Command::NmcDistance(k) => nmc_distance(config, ctx, k),
        Command::NmcSweep(k) => nmc_sweep(config, k),
        Command::Lintest(k) => lintest(config, ctx, k),
        Command::EvasiveSearch(k) => evasive_search(config, k),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        version: additive_lab::VERSION,
        command: config.command.name(),
        config: config.clone(),
        rng: RngInfo {
            generator: rng::GENERATOR_NAME,
            seed: config.seed,
            streams: "instance index",
        },
        records: out.records,
        summary: out.summary,
        error: out.error,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

