// SPDX-License-Identifier: Apache-2.0
//! Experiment configuration, per-trial records and aggregation.

use crate::registry::{Algorithm, Family, FamilyParams};
use hidden_edge::exhaustive::{is_wrong_pair, outcome_correct};
use hidden_edge::oracle::QueryRecord;
use hidden_edge::rng::StreamKey;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no vertex counts given")]
    NoSizes,
    #[error("family {family} needs n >= {min}, got {n}")]
    TooSmall { family: Family, min: usize, n: usize },
    #[error("c must be positive and finite, got {0}")]
    BadC(f64),
    #[error("r must be at least 1")]
    BadRounds,
    #[error("algorithm {algorithm} is not declared sound on family {family}; pass --force to run anyway")]
    Mismatch { algorithm: Algorithm, family: Family },
    #[error("trial {trial} at n = {n}: {message}")]
    Trial { n: usize, trial: u64, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("HIDDEN_EDGE_THREADS: {0}")]
    Threads(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One experiment: an algorithm on a family over a list of sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub family: Family,
    pub params: FamilyParams,
    pub n: Vec<usize>,
    pub trials: u64,
    pub c: f64,
    pub r: u32,
    pub seed: u64,
    /// Run even when the family is outside the algorithm's declared domain.
    pub force: bool,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, family: Family, n: Vec<usize>) -> Self {
        ExperimentConfig {
            algorithm,
            family,
            params: FamilyParams::default(),
            n,
            trials: 100,
            c: 1.0,
            r: 2,
            seed: 0,
            force: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        if self.n.is_empty() {
            return Err(HarnessError::NoSizes);
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < self.family.min_n()) {
            return Err(HarnessError::TooSmall {
                family: self.family,
                min: self.family.min_n(),
                n,
            });
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(HarnessError::BadC(self.c));
        }
        if self.r == 0 {
            return Err(HarnessError::BadRounds);
        }
        if !self.force && !self.algorithm.sound_on(self.family) {
            return Err(HarnessError::Mismatch {
                algorithm: self.algorithm,
                family: self.family,
            });
        }
        Ok(())
    }

    /// Independent stream of trial `trial` at size `n`.
    pub fn trial_key(&self, n: usize, trial: u64) -> StreamKey {
        StreamKey::new(self.seed, &format!("{}/{}/{}", self.algorithm, self.family, n), trial)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub outcome: String,
    pub edge: Option<(usize, usize)>,
    /// A true edge, or `NoEdgeFound` on an empty graph.
    pub outcome_correct: bool,
    pub wrong_pair: bool,
    pub queries_used: u64,
    pub rounds_used: u32,
    pub wall_time_us: u64,
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub success_rate: f64,
    pub wrong_pair_rate: f64,
    pub queries_mean: f64,
    pub queries_max: u64,
    pub rounds_max: u32,
    pub budget_ok: bool,
}

pub const COLUMNS: [&str; 7] = [
    "n",
    "success_rate",
    "wrong_pair_rate",
    "queries_mean",
    "queries_max",
    "rounds_max",
    "budget_ok",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub per_n: Vec<SizeSummary>,
}

impl Report {
    pub fn budget_ok(&self) -> bool {
        self.per_n.iter().all(|r| r.budget_ok)
    }
}

fn run_one(
    cfg: &ExperimentConfig,
    n: usize,
    trial: u64,
    record: bool,
) -> Result<(TrialRecord, Option<Vec<QueryRecord>>), HarnessError> {
    let key = cfg.trial_key(n, trial);
    let g = cfg.family.sample(n, cfg.params, &mut key.derive("graph").rng());
    let start = Instant::now();
    let run = cfg
        .algorithm
        .run(&g, cfg.c, cfg.r, &mut key.derive("algorithm").rng(), record)
        .map_err(|message| HarnessError::Trial { n, trial, message })?;
    let wall = start.elapsed().as_micros() as u64;
    let out = run.outcome;
    let rec = TrialRecord {
        trial,
        outcome: out.name().to_string(),
        edge: out.edge().map(|e| (e.u(), e.v())),
        outcome_correct: outcome_correct(&g, out),
        wrong_pair: is_wrong_pair(&g, out),
        queries_used: run.queries,
        rounds_used: run.rounds,
        wall_time_us: wall,
    };
    Ok((rec, run.transcript))
}

/// All trials at one size, in trial order, run on the current rayon pool.
pub fn run_trials(cfg: &ExperimentConfig, n: usize) -> Result<Vec<TrialRecord>, HarnessError> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_one(cfg, n, t, false).map(|(r, _)| r))
        .collect()
}

/// Summarizes trials at size `n` and checks them against the budgets.
pub fn summarize(cfg: &ExperimentConfig, n: usize, trials: &[TrialRecord]) -> SizeSummary {
    let count = trials.len().max(1) as f64;
    let budget = cfg.algorithm.query_budget(n, cfg.c, cfg.r);
    let round_bound = cfg.algorithm.round_bound(n, cfg.r);
    SizeSummary {
        n,
        success_rate: trials.iter().filter(|t| t.outcome_correct).count() as f64 / count,
        wrong_pair_rate: trials.iter().filter(|t| t.wrong_pair).count() as f64 / count,
        queries_mean: trials.iter().map(|t| t.queries_used as f64).sum::<f64>() / count,
        queries_max: trials.iter().map(|t| t.queries_used).max().unwrap_or(0),
        rounds_max: trials.iter().map(|t| t.rounds_used).max().unwrap_or(0),
        budget_ok: trials
            .iter()
            .all(|t| t.queries_used as f64 <= budget && t.rounds_used <= round_bound),
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let per_n = cfg
        .n
        .iter()
        .map(|&n| run_trials(cfg, n).map(|t| summarize(cfg, n, &t)))
        .collect::<Result<_, _>>()?;
    Ok(Report {
        config: cfg.clone(),
        per_n,
    })
}

/// Every counted query of one trial with its answer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialDump {
    pub algorithm: Algorithm,
    pub family: Family,
    pub n: usize,
    pub trial: u64,
    pub outcome: String,
    pub edge: Option<(usize, usize)>,
    pub queries: Vec<QueryRecord>,
}

pub fn dump_trial(cfg: &ExperimentConfig, n: usize, trial: u64) -> Result<TrialDump, HarnessError> {
    cfg.validate()?;
    let (rec, transcript) = run_one(cfg, n, trial, true)?;
    Ok(TrialDump {
        algorithm: cfg.algorithm,
        family: cfg.family,
        n,
        trial,
        outcome: rec.outcome,
        edge: rec.edge,
        queries: transcript.unwrap_or_default(),
    })
}

