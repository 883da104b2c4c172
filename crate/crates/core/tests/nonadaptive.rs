// SPDX-License-Identifier: Apache-2.0
//! The one-round general plan: sizes, budget, Monte Carlo success and
//! soundness.

use hidden_edge::adversary::hard_star_sample;
use hidden_edge::exhaustive::{is_wrong_pair, outcome_correct};
use hidden_edge::nonadaptive::{build_general_plan, degree_estimates, GeneralPlanConfig, EXHAUSTIVE_MAX_N};
use hidden_edge::rng::StreamKey;
use hidden_edge::single_edge::{known_endpoint_query_count, randomized_query_count};
use hidden_edge::{generators, FindOutcome, HiddenGraph, OracleSession};
use rand::Rng;

/// Largest possible plan: every F2 block at full size with its guard, every
/// F3 block at full size.
fn worst_case_len(cfg: GeneralPlanConfig) -> usize {
    let n = cfg.n;
    if n <= EXHAUSTIVE_MAX_N {
        return n * (n - 1) / 2;
    }
    let f2 = n * degree_estimates(n).len() * cfg.f2_blocks_per_guess() * (1 + known_endpoint_query_count(n - 1));
    cfg.f1_size() + f2 + cfg.f3_blocks() * randomized_query_count(n)
}

#[test]
fn worst_case_within_budget_for_all_n_up_to_1024() {
    for n in 4..=1024 {
        for c in [0.25, 1.0] {
            let cfg = GeneralPlanConfig::new(n, c);
            assert!(worst_case_len(cfg) as f64 <= cfg.budget(), "n={n} c={c}");
        }
    }
}

#[test]
fn built_plans_match_formulas() {
    for n in [4usize, 8, 9, 16, 33, 64, 100] {
        for c in [0.25, 1.0] {
            let cfg = GeneralPlanConfig::new(n, c);
            let p = build_general_plan(cfg, &mut StreamKey::new(71, "sizes", n as u64).rng());
            assert!(p.len() <= worst_case_len(cfg));
            assert!(p.len() as f64 <= cfg.budget());
            if n > EXHAUSTIVE_MAX_N {
                assert_eq!(p.layout.f1.len(), cfg.f1_size());
                assert_eq!(p.layout.f2.len(), n * degree_estimates(n).len() * cfg.f2_blocks_per_guess());
                assert_eq!(p.layout.f3.len(), cfg.f3_blocks());
                for b in &p.layout.f2 {
                    assert!(!b.block.target.contains(b.v));
                    assert_eq!(b.guard.is_some(), b.block.target.len() >= 2);
                }
            } else {
                assert!(p.layout.is_exhaustive());
            }
        }
    }
}

#[test]
fn plans_are_deterministic_per_seed() {
    let cfg = GeneralPlanConfig::new(40, 1.0);
    let a = build_general_plan(cfg, &mut StreamKey::new(5, "det", 3).rng());
    let b = build_general_plan(cfg, &mut StreamKey::new(5, "det", 3).rng());
    let c = build_general_plan(cfg, &mut StreamKey::new(5, "det", 4).rng());
    assert_eq!(a, b);
    assert_ne!(a.round, c.round);
}

fn success_rate(n: usize, trials: u64, label: &str, make: impl Fn(&mut hidden_edge::rng::StreamRng) -> HiddenGraph) -> f64 {
    let mut ok = 0;
    for t in 0..trials {
        let mut rng = StreamKey::new(72, label, t).rng();
        let g = make(&mut rng);
        let plan = build_general_plan(GeneralPlanConfig::new(n, 1.0), &mut rng);
        let out = plan.run(&mut OracleSession::new(&g)).unwrap();
        assert!(!is_wrong_pair(&g, out), "{label} trial {t}");
        ok += usize::from(outcome_correct(&g, out));
    }
    ok as f64 / trials as f64
}

#[test]
fn complete_graph_found() {
    assert!(success_rate(64, 200, "kn", |_| generators::complete(64)) >= 0.99);
}

#[test]
fn single_edge_found() {
    assert!(success_rate(64, 200, "single", |r| generators::single_edge(64, r)) >= 0.99);
}

#[test]
fn empty_graph_reports_none() {
    let p = build_general_plan(GeneralPlanConfig::new(64, 1.0), &mut StreamKey::new(1, "e", 0).rng());
    assert_eq!(p.run(&mut OracleSession::new(&HiddenGraph::empty(64))).unwrap(), FindOutcome::NoEdgeFound);
}

/// Graphs of every density, stars and hard stars never produce a wrong pair.
#[test]
fn general_plan_soundness_fuzz() {
    let mut wrong = 0;
    let mut total = 0;
    for t in 0..240u64 {
        let mut rng = StreamKey::new(73, "general_fuzz", t).rng();
        let n = [16usize, 32, 64][t as usize % 3];
        let g = match t % 4 {
            0 => generators::gnp(n, rng.gen_range(0.01..1.0), &mut rng),
            1 => generators::star(n, rng.gen_range(1..n), &mut rng),
            2 => hard_star_sample(n, &mut rng),
            _ => generators::matching(n, rng.gen_range(1..=n / 2), &mut rng),
        };
        let plan = build_general_plan(GeneralPlanConfig::new(n, 1.0), &mut rng);
        let out = plan.run(&mut OracleSession::new(&g)).unwrap();
        wrong += usize::from(is_wrong_pair(&g, out));
        total += 1;
    }
    assert!(wrong as f64 <= 0.001 * total as f64, "{wrong}/{total}");
}
