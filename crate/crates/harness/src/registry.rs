// SPDX-License-Identifier: Apache-2.0
//! Algorithms and graph families known to the harness.

use hidden_edge::adversary::hard_star_sample;
use hidden_edge::families::{
    clique_det_build, clique_rand_build, matching_det_build, matching_det_query_count, matching_rand_build,
    op_build,
};
use hidden_edge::multi_round::{run_binary_search, run_det_rounds, run_rand_rounds};
use hidden_edge::nonadaptive::{build_general_plan, GeneralPlanConfig};
use hidden_edge::oracle::QueryRecord;
use hidden_edge::rng::StreamRng;
use hidden_edge::single_edge::{build_explicit, build_randomized, explicit_query_count, randomized_query_count};
use hidden_edge::{generators, FindOutcome, HiddenGraph, OracleSession, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    GeneralNonadaptive,
    SingleEdgeRand,
    SingleEdgeExplicit,
    OverlappingProduct,
    CliqueDet,
    CliqueRand,
    MatchingDet,
    MatchingRand,
    BinarySearch,
    DetRounds,
    RandRounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Empty,
    Complete,
    PlantedSingleEdge,
    PlantedStar,
    Clique,
    Matching,
    OverlappingProduct,
    Gnp,
    HardStar,
}

macro_rules! ids {
    ($ty:ident, $what:literal, $($v:ident => $id:literal),+ $(,)?) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$v),+];

            pub fn id(self) -> &'static str {
                match self { $($ty::$v => $id),+ }
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($id => Ok($ty::$v),)+
                    _ => Err(format!(
                        concat!("unknown ", $what, " id '{}' (known: {})"),
                        s,
                        $ty::ALL.iter().map(|x| x.id()).collect::<Vec<_>>().join(", ")
                    )),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.id())
            }
        }
    };
}

ids!(Algorithm, "algorithm",
    GeneralNonadaptive => "general_nonadaptive",
    SingleEdgeRand => "single_edge_rand",
    SingleEdgeExplicit => "single_edge_explicit",
    OverlappingProduct => "overlapping_product",
    CliqueDet => "clique_det",
    CliqueRand => "clique_rand",
    MatchingDet => "matching_det",
    MatchingRand => "matching_rand",
    BinarySearch => "binary_search",
    DetRounds => "det_rounds",
    RandRounds => "rand_rounds",
);

ids!(Family, "family",
    Empty => "empty",
    Complete => "complete",
    PlantedSingleEdge => "planted_single_edge",
    PlantedStar => "planted_star",
    Clique => "clique",
    Matching => "matching",
    OverlappingProduct => "overlapping_product",
    Gnp => "gnp",
    HardStar => "hard_star",
);

/// Optional family parameters; unset ones take per-`n` defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Clique size, matching size, star degree, or `|A| = |B|` of a product.
    pub k: Option<usize>,
    /// Edge probability for `gnp`.
    pub p: Option<f64>,
}

fn ceil_log2(n: usize) -> u32 {
    usize::BITS - (n.max(1) - 1).leading_zeros()
}

fn root(n: usize) -> usize {
    (n as f64).sqrt().ceil() as usize
}

impl Family {
    pub fn min_n(self) -> usize {
        match self {
            Family::HardStar => 4,
            _ => 2,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Family::Empty => "no edges",
            Family::Complete => "K_n",
            Family::PlantedSingleEdge => "one uniform edge",
            Family::PlantedStar => "uniform center with k leaves (default ceil(sqrt n))",
            Family::Clique => "clique on k uniform vertices (default 5)",
            Family::Matching => "k disjoint uniform edges (default n/4)",
            Family::OverlappingProduct => "A x B with |A| = |B| = k (default ceil(sqrt n))",
            Family::Gnp => "G(n, p) (default p = 2/n)",
            Family::HardStar => "uniform center, each leaf with probability 1/log2 n",
        }
    }

    pub fn sample(self, n: usize, params: FamilyParams, rng: &mut StreamRng) -> HiddenGraph {
        let k = |default: usize| params.k.unwrap_or(default).min(n);
        match self {
            Family::Empty => HiddenGraph::empty(n),
            Family::Complete => generators::complete(n),
            Family::PlantedSingleEdge => generators::single_edge(n, rng),
            Family::PlantedStar => generators::star(n, k(root(n)), rng),
            Family::Clique => generators::clique(n, k(5), rng),
            Family::Matching => generators::matching(n, params.k.unwrap_or((n / 4).max(1)), rng),
            Family::OverlappingProduct => {
                let s = k(root(n));
                generators::overlapping_product(n, s, s, rng)
            }
            Family::Gnp => generators::gnp(n, params.p.unwrap_or(2.0 / n as f64).clamp(0.0, 1.0), rng),
            Family::HardStar => hard_star_sample(n, rng),
        }
    }
}

/// Outcome of one algorithm run.
#[derive(Clone, Debug)]
pub struct Run {
    pub outcome: FindOutcome,
    pub queries: u64,
    pub rounds: u32,
    pub transcript: Option<Vec<QueryRecord>>,
}

impl Algorithm {
    pub fn uses_rounds(self) -> bool {
        matches!(self, Algorithm::DetRounds | Algorithm::RandRounds)
    }

    pub fn uses_c(self) -> bool {
        matches!(
            self,
            Algorithm::GeneralNonadaptive | Algorithm::CliqueRand | Algorithm::MatchingRand | Algorithm::RandRounds
        )
    }

    /// Families on which the algorithm is declared to find an edge.
    pub fn sound_on(self, family: Family) -> bool {
        use Family::*;
        match self {
            Algorithm::GeneralNonadaptive
            | Algorithm::BinarySearch
            | Algorithm::DetRounds
            | Algorithm::RandRounds => true,
            Algorithm::SingleEdgeRand | Algorithm::SingleEdgeExplicit => matches!(family, Empty | PlantedSingleEdge),
            Algorithm::OverlappingProduct => matches!(
                family,
                Empty | Complete | PlantedSingleEdge | PlantedStar | Clique | OverlappingProduct | HardStar
            ),
            Algorithm::CliqueDet | Algorithm::CliqueRand => matches!(family, Empty | Complete | PlantedSingleEdge | Clique),
            Algorithm::MatchingDet | Algorithm::MatchingRand => matches!(family, Empty | PlantedSingleEdge | Matching),
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            Algorithm::GeneralNonadaptive | Algorithm::BinarySearch | Algorithm::DetRounds | Algorithm::RandRounds => {
                "all graphs"
            }
            Algorithm::SingleEdgeRand | Algorithm::SingleEdgeExplicit => "at most one edge",
            Algorithm::OverlappingProduct => "overlapping products (stars and cliques included)",
            Algorithm::CliqueDet | Algorithm::CliqueRand => "cliques",
            Algorithm::MatchingDet | Algorithm::MatchingRand => "matchings",
        }
    }

    pub fn budget_formula(self) -> &'static str {
        match self {
            Algorithm::GeneralNonadaptive => "queries <= 500 c n log2^3 n, 1 round",
            Algorithm::SingleEdgeRand => "queries = ceil(24 ln n) + 1, 1 round",
            Algorithm::SingleEdgeExplicit => "queries <= 4 ceil(log2(n+1)) + 1, 1 round",
            Algorithm::OverlappingProduct => "queries <= n ceil(log2 n), 1 round",
            Algorithm::CliqueDet => "queries <= 3n, 1 round",
            Algorithm::CliqueRand | Algorithm::MatchingRand => "queries <= 500 c ln n log2^2 n, 1 round",
            Algorithm::MatchingDet => "queries = matching recurrence f(n), 1 round",
            Algorithm::BinarySearch => "rounds <= ceil(log2 n), queries <= 6 per round",
            Algorithm::DetRounds => "queries <= 10 r n^(2/r), rounds <= r",
            Algorithm::RandRounds => "queries <= 2000 c r n^(1/r) ln^3 n, rounds <= r",
        }
    }

    /// Query ceiling at `n`.
    pub fn query_budget(self, n: usize, c: f64, r: u32) -> f64 {
        let nf = n as f64;
        let lg = nf.log2();
        let r = r as f64;
        match self {
            Algorithm::GeneralNonadaptive => GeneralPlanConfig::new(n, c).budget(),
            Algorithm::SingleEdgeRand => randomized_query_count(n) as f64,
            Algorithm::SingleEdgeExplicit => explicit_query_count(n) as f64,
            Algorithm::OverlappingProduct => (n * ceil_log2(n) as usize) as f64,
            Algorithm::CliqueDet => 3.0 * nf,
            Algorithm::CliqueRand | Algorithm::MatchingRand => 500.0 * c * nf.ln() * lg * lg,
            Algorithm::MatchingDet => matching_det_query_count(n) as f64,
            Algorithm::BinarySearch => 6.0 * ceil_log2(n).max(1) as f64,
            Algorithm::DetRounds => 10.0 * r * nf.powf(2.0 / r),
            Algorithm::RandRounds => 2000.0 * c * r * nf.powf(1.0 / r) * nf.ln().powi(3),
        }
    }

    pub fn round_bound(self, n: usize, r: u32) -> u32 {
        match self {
            Algorithm::BinarySearch => ceil_log2(n).max(1),
            Algorithm::DetRounds | Algorithm::RandRounds => r,
            _ => 1,
        }
    }

    /// Runs once against `g`. The algorithm sees only the session.
    pub fn run(self, g: &HiddenGraph, c: f64, r: u32, rng: &mut StreamRng, record: bool) -> Result<Run, String> {
        let n = g.n();
        let mut session = if self.uses_rounds() {
            OracleSession::with_round_limit(g, r)
        } else {
            OracleSession::new(g)
        };
        if record {
            session = session.recording();
        }
        let s = &mut session;
        let full = VertexSet::full(n);
        let outcome = match self {
            Algorithm::GeneralNonadaptive => text(build_general_plan(GeneralPlanConfig::new(n, c), rng).run(s)),
            Algorithm::SingleEdgeRand => text(run_single(build_randomized(&full, rng).map_err(|e| e.to_string())?, s)),
            Algorithm::SingleEdgeExplicit => text(run_single(build_explicit(&full).map_err(|e| e.to_string())?, s)),
            Algorithm::OverlappingProduct => text(op_build(n).run(s)),
            Algorithm::CliqueDet => text(clique_det_build(n).run(s)),
            Algorithm::CliqueRand => text(clique_rand_build(n, c, rng).run(s)),
            Algorithm::MatchingDet => text(matching_det_build(n).run(s)),
            Algorithm::MatchingRand => text(matching_rand_build(n, c, rng).run(s)),
            Algorithm::BinarySearch => text(run_binary_search(s)),
            Algorithm::DetRounds => text(run_det_rounds(s, r)),
            Algorithm::RandRounds => text(run_rand_rounds(s, r, c, rng)),
        }?;
        Ok(Run {
            outcome,
            queries: session.queries_used(),
            rounds: session.rounds_used(),
            transcript: session.transcript().map(<[_]>::to_vec),
        })
    }
}

fn text<E: ToString>(r: Result<FindOutcome, E>) -> Result<FindOutcome, String> {
    r.map_err(|e| e.to_string())
}

fn run_single(
    plan: hidden_edge::single_edge::SingleEdgePlan,
    s: &mut OracleSession<'_>,
) -> Result<FindOutcome, hidden_edge::OracleError> {
    let round = plan.round_plan().clone().with_round_index(s.next_round_index());
    let answers = s.submit_round(round)?;
    Ok(plan.decode(&answers).expect("answers align with the plan"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for a in Algorithm::ALL {
            assert_eq!(a.id().parse::<Algorithm>().unwrap(), *a);
            assert_eq!(serde_json::to_string(a).unwrap(), format!("\"{}\"", a.id()));
        }
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), *f);
            assert_eq!(serde_json::to_string(f).unwrap(), format!("\"{}\"", f.id()));
        }
        assert!("nope".parse::<Algorithm>().unwrap_err().contains("unknown algorithm id"));
    }

    #[test]
    fn every_algorithm_accepts_empty_graphs() {
        for a in Algorithm::ALL {
            assert!(a.sound_on(Family::Empty) && a.sound_on(Family::PlantedSingleEdge), "{a}");
        }
        assert!(!Algorithm::CliqueDet.sound_on(Family::Matching));
    }
}
