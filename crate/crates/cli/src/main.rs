//! `tengraph` command-line driver.
//!
//! ```text
//! tengraph simulate --config sim.json --out runs/s1 [--workers N] [--seed U64]
//! tengraph estimate [--config est.json] [--target T.tgt --aux A.tgt ...] --out fit/
//! tengraph eval     [--config cv.json]  [--target T.tgt --aux A.tgt ...] --out cv/
//! ```
//!
//! Exit status: 0 on success, 1 when some simulation replications failed
//! (see `failures.json`), 2 on any other error.

mod config;
mod estimate;
mod eval;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tengraph::transfer::WeightKind;

use config::{EstimateConfig, EvalConfig, SimulateConfig};

#[derive(Parser)]
#[command(name = "tengraph", version, about = "Transfer learning for tensor Gaussian graphical models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: one per CPU).
    #[arg(long)]
    workers: Option<usize>,
    /// Overrides the seed of the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DataFlags {
    /// Target sample file (TGT1, samples along the last mode).
    #[arg(long)]
    target: Option<PathBuf>,
    /// Auxiliary sample file; repeat for several domains.
    #[arg(long = "aux")]
    aux: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Naive,
    Adaptive,
}

#[derive(Subcommand)]
enum Command {
    /// Replicate a simulation scenario and write per-replication and summary CSVs.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Fit the transfer estimator to sample files.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        data: DataFlags,
        /// Auxiliary weighting scheme.
        #[arg(long, value_enum)]
        scheme: Option<Scheme>,
    },
    /// Cross-validated prediction error of Tlasso and both transfer variants.
    Eval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        data: DataFlags,
        #[arg(long)]
        folds: Option<usize>,
        /// One-based mode to score.
        #[arg(long)]
        mode: Option<usize>,
    },
}

fn init_pool(workers: Option<usize>) -> Result<()> {
    if let Some(n) = workers {
        if n == 0 {
            bail!("--workers must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Number of failed replications.
fn run(cli: Cli) -> Result<usize> {
    match cli.command {
        Command::Simulate { common } => {
            init_pool(common.workers)?;
            let Some(path) = &common.config else {
                bail!("simulate needs --config");
            };
            let mut cfg: SimulateConfig = config::load(path)?;
            if let Some(seed) = common.seed {
                cfg.base_seed = seed;
            }
            simulate::simulate(&cfg, &common.out)
        }
        Command::Estimate { common, data, scheme } => {
            init_pool(common.workers)?;
            let mut cfg: EstimateConfig = match &common.config {
                Some(p) => config::load(p)?,
                None => EstimateConfig::default(),
            };
            if let Some(seed) = common.seed {
                cfg.transfer.seed = seed;
            }
            match scheme {
                Some(Scheme::Naive) => cfg.transfer.scheme = WeightKind::Naive,
                Some(Scheme::Adaptive) => cfg.transfer.scheme = WeightKind::Adaptive,
                None => {}
            }
            let inputs = config::inputs(
                common.config.as_deref(),
                cfg.target.clone(),
                cfg.auxiliaries.clone(),
                data.target.as_deref(),
                &data.aux,
            )?;
            estimate::estimate(&inputs, &cfg.transfer, &common.out)?;
            Ok(0)
        }
        Command::Eval {
            common,
            data,
            folds,
            mode,
        } => {
            init_pool(common.workers)?;
            let mut cfg: EvalConfig = match &common.config {
                Some(p) => config::load(p)?,
                None => EvalConfig::default(),
            };
            if let Some(seed) = common.seed {
                cfg.seed = seed;
                cfg.transfer.seed = seed;
            }
            let inputs = config::inputs(
                common.config.as_deref(),
                cfg.target.clone(),
                cfg.auxiliaries.clone(),
                data.target.as_deref(),
                &data.aux,
            )?;
            eval::eval(
                &inputs,
                folds.unwrap_or(cfg.folds),
                mode.unwrap_or(cfg.mode),
                cfg.seed,
                &cfg.transfer,
                &common.out,
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TENGRAPH_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("{n} replication(s) failed; see failures.json");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
