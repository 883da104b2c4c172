// SPDX-License-Identifier: Apache-2.0
//! Edge finding in hidden graphs with independent-set queries.
//!
//! A query names a vertex set and learns whether it contains both endpoints
//! of some edge. All answers come from an [`OracleSession`], which counts
//! queries and enforces round order; the algorithms here only build plans
//! and decode answers.

pub mod adversary;
pub mod exhaustive;
pub mod families;
pub mod generators;
pub mod gf2k;
pub mod graph;
pub mod multi_round;
pub mod nonadaptive;
pub mod oracle;
pub mod rng;
pub mod set;
pub mod single_edge;

pub use graph::{Edge, GraphError, HiddenGraph, VertexId};
pub use oracle::{
    Answers, DecodeError, EdgeOracle, FindOutcome, OracleError, OracleSession, QueryTag, RoundAnswers,
    RoundPlan,
};
pub use set::{SetFamily, SetRef, VertexSet};
