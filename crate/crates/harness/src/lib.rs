// SPDX-License-Identifier: Apache-2.0
//! Experiment harness for the hidden-edge finders: algorithm and family
//! registry, parallel Monte Carlo runs, audited reports and the acceptance
//! checks.

pub mod criteria;
pub mod experiment;
pub mod pool;
pub mod registry;
pub mod report;

pub use experiment::{run_experiment, ExperimentConfig, HarnessError, Report, SizeSummary, TrialRecord};
pub use registry::{Algorithm, Family, FamilyParams};
pub use report::{Format, SweepReport};
