// SPDX-License-Identifier: Apache-2.0
//! `hidden-edge`: run, sweep and list edge-finding experiments.

use clap::{Args, Parser, Subcommand};
use hidden_edge_harness::experiment::dump_trial;
use hidden_edge_harness::pool::pool_from_env;
use hidden_edge_harness::report::{render, render_sweep, write_output};
use hidden_edge_harness::{run_experiment, Algorithm, ExperimentConfig, Family, FamilyParams, Format, HarnessError, SweepReport};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hidden-edge", version, about = "Edge finding with independent-set queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one family over a list of sizes.
    Run {
        #[command(flatten)]
        common: Common,
        /// Error exponent for randomized algorithms.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Write every query and answer of trial 0 at the first size as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Run the cartesian product of the `--n` and `--c` lists.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
    },
    /// List algorithms and families with their domains and budgets.
    List,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    algorithm: Algorithm,
    #[arg(long)]
    family: Family,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Round limit for the r-round algorithms.
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Family size parameter: clique size, matching size, star degree or product side.
    #[arg(long)]
    k: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Run even if the family lies outside the algorithm's declared domain.
    #[arg(long)]
    force: bool,
}

impl Common {
    fn config(&self, c: f64) -> ExperimentConfig {
        ExperimentConfig {
            algorithm: self.algorithm,
            family: self.family,
            params: FamilyParams { k: self.k, p: self.p },
            n: self.n.clone(),
            trials: self.trials,
            c,
            r: self.r,
            seed: self.seed,
            force: self.force,
        }
    }
}

fn list() -> String {
    let mut out = String::from("algorithms:\n");
    for a in Algorithm::ALL {
        out += &format!("  {:<22} domain: {}; budget: {}\n", a.id(), a.domain(), a.budget_formula());
    }
    out += "families:\n";
    for f in Family::ALL {
        out += &format!("  {:<22} {}\n", f.id(), f.describe());
    }
    out
}

/// `Ok(true)` iff every budget verdict passed.
fn execute(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::List => {
            write_output(&list(), None)?;
            Ok(true)
        }
        Command::Run { common, c, dump } => {
            let cfg = common.config(c);
            let pool = pool_from_env()?;
            let report = pool.install(|| run_experiment(&cfg))?;
            if let Some(path) = dump {
                let d = dump_trial(&cfg, cfg.n[0], 0)?;
                write_output(&(serde_json::to_string_pretty(&d)? + "\n"), Some(&path))?;
            }
            write_output(&render(&report, common.format)?, common.output.as_deref())?;
            Ok(report.budget_ok())
        }
        Command::Sweep { common, c } => {
            let pool = pool_from_env()?;
            let runs = c
                .iter()
                .map(|&c| pool.install(|| run_experiment(&common.config(c))))
                .collect::<Result<Vec<_>, _>>()?;
            let sweep = SweepReport { runs };
            write_output(&render_sweep(&sweep, common.format)?, common.output.as_deref())?;
            Ok(sweep.budget_ok())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("budget check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
