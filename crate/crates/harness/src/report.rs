// SPDX-License-Identifier: Apache-2.0
//! JSON and CSV report writers.

use crate::experiment::{HarnessError, Report, SizeSummary, COLUMNS};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format '{s}' (known: json, csv)")),
        }
    }
}

/// Reports of a sweep, one per value of `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub runs: Vec<Report>,
}

impl SweepReport {
    pub fn budget_ok(&self) -> bool {
        self.runs.iter().all(Report::budget_ok)
    }
}

fn row(s: &SizeSummary) -> [String; 7] {
    [
        s.n.to_string(),
        s.success_rate.to_string(),
        s.wrong_pair_rate.to_string(),
        s.queries_mean.to_string(),
        s.queries_max.to_string(),
        s.rounds_max.to_string(),
        s.budget_ok.to_string(),
    ]
}

pub fn to_json(report: &Report) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Header row, then one row per size.
pub fn to_csv(report: &Report) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for s in &report.per_n {
        w.write_record(row(s))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("utf-8"))
}

pub fn sweep_to_json(sweep: &SweepReport) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(sweep)? + "\n")
}

/// As [`to_csv`] with a leading `c` column.
pub fn sweep_to_csv(sweep: &SweepReport) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(std::iter::once("c").chain(COLUMNS))?;
    for r in &sweep.runs {
        for s in &r.per_n {
            w.write_record(std::iter::once(r.config.c.to_string()).chain(row(s)))?;
        }
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("utf-8"))
}

pub fn render(report: &Report, format: Format) -> Result<String, HarnessError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}

pub fn render_sweep(sweep: &SweepReport, format: Format) -> Result<String, HarnessError> {
    match format {
        Format::Json => sweep_to_json(sweep),
        Format::Csv => sweep_to_csv(sweep),
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| HarnessError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| HarnessError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub fn write_report(report: &Report, path: Option<&Path>, format: Format) -> Result<(), HarnessError> {
    write_output(&render(report, format)?, path)
}
