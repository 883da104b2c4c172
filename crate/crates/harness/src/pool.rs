// SPDX-License-Identifier: Apache-2.0
//! Worker pool sized from `HIDDEN_EDGE_THREADS`.

use crate::experiment::HarnessError;

pub const THREADS_VAR: &str = "HIDDEN_EDGE_THREADS";

/// Parses a thread cap; `None` or an empty value means no cap.
pub fn parse_threads(value: Option<&str>) -> Result<Option<usize>, HarnessError> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(0) | Err(_) => Err(HarnessError::Threads(format!("expected a positive integer, got '{v}'"))),
            Ok(k) => Ok(Some(k)),
        },
    }
}

/// A pool of at most `cap` threads, and at most the available parallelism.
pub fn build_pool(cap: Option<usize>) -> Result<rayon::ThreadPool, HarnessError> {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    rayon::ThreadPoolBuilder::new()
        .num_threads(cap.map_or(avail, |c| c.min(avail)))
        .build()
        .map_err(|e| HarnessError::Threads(e.to_string()))
}

pub fn pool_from_env() -> Result<rayon::ThreadPool, HarnessError> {
    build_pool(parse_threads(std::env::var(THREADS_VAR).ok().as_deref())?)
}
