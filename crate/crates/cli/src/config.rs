use std::path::PathBuf;

use additive_lab::fpn::{is_prime, MAX_ORDER};
use clap::{Args, ValueEnum};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LogBaseArg {
    E,
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct BrzVerify {
    /// Number of random instances (ignored with --set)
    #[arg(long, default_value_t = 200)]
    pub instances: usize,
    /// Doubling bound |A − A|/|A| for generated sets, as an integer or a/b
    #[arg(long, default_value = "2")]
    pub max_doubling: String,
    /// Gentle-set thresholds tried before the exhaustive fallback
    #[arg(long, value_delimiter = ',', default_value = "0.98,0.99,0.999")]
    pub thresholds: Vec<f64>,
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct ChangScan {
    #[arg(long, default_value_t = 500)]
    pub instances: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.8")]
    pub gammas: Vec<f64>,
    #[arg(long, value_enum, default_value = "e")]
    pub log_base: LogBaseArg,
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct PlunneckeScan {
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Largest k + ℓ checked
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct ShiftsetScan {
    #[arg(long, default_value_t = 20)]
    pub instances: usize,
    #[arg(long, default_value = "2")]
    pub max_doubling: String,
    /// Threshold defining the gentle shift set X
    #[arg(long, default_value_t = 0.98)]
    pub threshold: f64,
    /// Threshold the t-fold sums tX are checked against
    #[arg(long, default_value_t = 0.9)]
    pub closure_threshold: f64,
    #[arg(long, default_value_t = 3)]
    pub t_max: usize,
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct CrootTrial {
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    /// |A| for generated sets (ignored with --set)
    #[arg(long, default_value_t = 8)]
    pub size: usize,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c_const: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 16)]
    pub max_classes: usize,
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct NmcDistance {
    /// identity | constant[:c1,c2] | affine | permutation | coordinatewise | random
    #[arg(long, default_value = "identity")]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct NmcSweep {
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n_values: Vec<u32>,
    #[arg(long, default_value = "coordinatewise")]
    pub family: String,
    /// Size of the affine-evasive message set (found by exhaustive search)
    #[arg(long, default_value_t = 2)]
    pub evasive_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct Lintest {
    /// Corruption rates; 1 means a uniformly random table
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub corrupt: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Random bases tried when exhaustive agreement exceeds the budget
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long = "fn")]
    pub fn_file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
#[group(skip)]
pub struct EvasiveSearch {
    #[arg(long, default_value_t = 2)]
    pub size: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "args", rename_all = "kebab-case")]
pub enum Command {
    BrzVerify(BrzVerify),
    ChangScan(ChangScan),
    PlunneckeScan(PlunneckeScan),
    ShiftsetScan(ShiftsetScan),
    CrootTrial(CrootTrial),
    NmcDistance(NmcDistance),
    NmcSweep(NmcSweep),
    Lintest(Lintest),
    EvasiveSearch(EvasiveSearch),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BrzVerify(_) => "brz-verify",
            Command::ChangScan(_) => "chang-scan",
            Command::PlunneckeScan(_) => "plunnecke-scan",
            Command::ShiftsetScan(_) => "shiftset-scan",
            Command::CrootTrial(_) => "croot-trial",
            Command::NmcDistance(_) => "nmc-distance",
            Command::NmcSweep(_) => "nmc-sweep",
            Command::Lintest(_) => "lintest",
            Command::EvasiveSearch(_) => "evasive-search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub p: u64,
    pub n: u32,
    pub seed: u64,
    pub budget: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub command: Command,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parses "k" or "a/b" into a positive rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, ConfigError> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| ConfigError(format!("not a ratio: {s:?}")));
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let b = parse(b)?;
            if b == 0 {
                return bad(format!("zero denominator in {s:?}"));
            }
            Ratio::new(parse(a)?, b)
        }
        None => Ratio::from_integer(parse(s)?),
    };
    Ok(r)
}

fn unit_interval(name: &str, v: f64, open_low: bool) -> Result<(), ConfigError> {
    let ok = if open_low { v > 0.0 && v <= 1.0 } else { (0.0..=1.0).contains(&v) };
    if ok {
        Ok(())
    } else {
        bad(format!("{name} must lie in {}0, 1], got {v}", if open_low { "(" } else { "[" }))
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        let order = (self.p as u128).checked_pow(self.n).unwrap_or(u128::MAX);
        if order > MAX_ORDER as u128 {
            return bad(format!("p^n exceeds {MAX_ORDER}"));
        }
        if self.budget == 0 {
            return bad("budget must be positive");
        }
        match &self.command {
            Command::BrzVerify(k) => {
                let d = parse_ratio(&k.max_doubling)?;
                if d < Ratio::from_integer(1) {
                    return bad("max-doubling must be at least 1");
                }
                for &t in &k.thresholds {
                    unit_interval("threshold", t, false)?;
                }
            }
            Command::ChangScan(k) => {
                for &g in &k.gammas {
                    unit_interval("gamma", g, true)?;
                }
            }
            Command::PlunneckeScan(k) => {
                if k.kmax == 0 {
                    return bad("kmax must be at least 1");
                }
            }
            Command::ShiftsetScan(k) => {
                let d = parse_ratio(&k.max_doubling)?;
                if d < Ratio::from_integer(1) {
                    return bad("max-doubling must be at least 1");
                }
                unit_interval("threshold", k.threshold, false)?;
                unit_interval("closure-threshold", k.closure_threshold, false)?;
                if k.t_max == 0 {
                    return bad("t-max must be at least 1");
                }
            }
            Command::CrootTrial(k) => {
                if k.q < 1.0 || k.eps <= 0.0 || k.c_const <= 0.0 {
                    return bad("need q ≥ 1, eps > 0 and c-const > 0");
                }
                if k.set.is_none() && (k.size == 0 || k.size as u128 > order) {
                    return bad("size must lie in 1..=p^n");
                }
            }
            Command::NmcDistance(k) => {
                if let crate::run::Family::Constant(Some((c1, c2))) = crate::run::parse_family(&k.family)? {
                    if c1 as u128 >= order || c2 as u128 >= order {
                        return bad("constant tampering indices must lie below p^n");
                    }
                }
            }
            Command::NmcSweep(k) => {
                crate::run::parse_family(&k.family)?;
                if k.n_values.is_empty() || k.n_values.contains(&0) {
                    return bad("n-values must be a nonempty list of positive integers");
                }
                if k.evasive_size == 0 || k.evasive_size as u64 > self.p {
                    return bad("evasive-size must lie in 1..=p");
                }
            }
            Command::Lintest(k) => {
                for &r in &k.corrupt {
                    unit_interval("corruption rate", r, false)?;
                }
                if k.samples == 0 {
                    return bad("samples must be positive");
                }
            }
            Command::EvasiveSearch(k) => {
                if k.size == 0 || k.size as u64 > self.p {
                    return bad("size must lie in 1..=p");
                }
            }
        }
        Ok(())
    }
}
