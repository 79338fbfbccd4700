use std::path::PathBuf;
use std::process::ExitCode;

use additive_lab_cli::config::{
    self, BrzVerify, ChangScan, CrootTrial, EvasiveSearch, Lintest, NmcDistance, NmcSweep,
    PlunneckeScan, ShiftsetScan,
};
use additive_lab_cli::{run, Command, ExperimentConfig, Format};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "additive-lab", version, about = "Exact experiments in additive combinatorics over F_p^n")]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Args)]
struct Common {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Work limit; commands that would exceed it fail with a budget error
    #[arg(long, default_value_t = additive_lab::Budget::DEFAULT.0)]
    budget: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

macro_rules! subcommands {
    ($($variant:ident($knobs:ty)),* $(,)?) => {
        #[derive(Subcommand)]
        enum Sub {
            $(
                $variant {
                    #[command(flatten)]
                    common: Common,
                    #[command(flatten)]
                    knobs: $knobs,
                },
            )*
            /// Run an experiment described by a JSON config file
            RunConfig { path: PathBuf },
        }

        impl Sub {
            fn into_config(self) -> Result<ExperimentConfig, config::ConfigError> {
                match self {
                    $(
                        Sub::$variant { common, knobs } => Ok(ExperimentConfig {
                            p: common.p,
                            n: common.n,
                            seed: common.seed,
                            budget: common.budget,
                            format: common.format,
                            output: common.output,
                            command: Command::$variant(knobs),
                        }),
                    )*
                    Sub::RunConfig { path } => {
                        let text = std::fs::read_to_string(&path)
                            .map_err(|e| config::ConfigError(format!("{}: {e}", path.display())))?;
                        ExperimentConfig::from_json(&text)
                    }
                }
            }
        }
    };
}

subcommands! {
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

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.cmd.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match report.render(cfg.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot render report: {e}");
            return ExitCode::from(1);
        }
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if let Some(err) = &report.error {
        eprintln!("error: {}", err["message"].as_str().unwrap_or("run failed"));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
