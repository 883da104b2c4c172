// SPDX-License-Identifier: Apache-2.0
//! Finders specialised to structured graph families.

pub mod clique;
pub mod matching;
pub mod overlapping;

pub use clique::{clique_det_build, clique_rand_build, CliqueDetPlan, CliqueRandPlan, LadderLayout};
pub use matching::{matching_det_build, matching_det_query_count, matching_rand_build, MatchingDetPlan};
pub use overlapping::{op_build, OpPlan};

use crate::graph::HiddenGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    OverlappingProduct,
    Star,
    Clique,
    Matching,
}

impl FamilyTag {
    /// Whether every graph of `self` also belongs to `other`.
    pub fn within(self, other: FamilyTag) -> bool {
        use FamilyTag::*;
        self == other || matches!((self, other), (Star | Clique, OverlappingProduct))
    }
}

/// All edges share one endpoint (the empty graph counts).
pub fn is_star(g: &HiddenGraph) -> bool {
    let e = g.edges();
    let Some(first) = e.first() else { return true };
    [first.u(), first.v()]
        .iter()
        .any(|&c| e.iter().all(|x| x.contains(c)))
}

/// The non-isolated vertices form a clique.
pub fn is_clique(g: &HiddenGraph) -> bool {
    let k = (0..g.n()).filter(|&v| g.degree(v) > 0).count();
    g.m() == k * k.saturating_sub(1) / 2
}

pub fn is_matching(g: &HiddenGraph) -> bool {
    (0..g.n()).all(|v| g.degree(v) <= 1)
}
