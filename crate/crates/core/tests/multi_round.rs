// SPDX-License-Identifier: Apache-2.0
//! Round drivers: exhaustive exactness, budgets and partition structure.

use hidden_edge::exhaustive::{explore_transcripts, graph_from_mask, outcome_correct};
use hidden_edge::multi_round::{partition_params, run_binary_search, run_det_rounds, run_rand_rounds, Partition};
use hidden_edge::nonadaptive::{build_general_plan, GeneralPlanConfig};
use hidden_edge::rng::StreamKey;
use hidden_edge::{FindOutcome, HiddenGraph, OracleSession};

fn det_budget(n: usize, r: u32) -> f64 {
    10.0 * r as f64 * (n as f64).powf(2.0 / r as f64)
}

fn ceil_log2(n: usize) -> u32 {
    usize::BITS - (n.max(1) - 1).leading_zeros()
}

#[test]
fn det_rounds_exact_on_all_graphs_up_to_8() {
    for n in 2..=8usize {
        for r in 1..=3u32 {
            let rep = explore_transcripts(n, Some(r), |s| run_det_rounds(s, r));
            assert!(rep.is_exact(), "n={n} r={r}: {:?} {:?}", rep.counterexamples, rep.errors);
            assert!(rep.max_rounds <= r);
            assert!(rep.max_queries as f64 <= det_budget(n, r), "n={n} r={r} q={}", rep.max_queries);
        }
    }
}

/// Cross-check of the transcript explorer by brute force over every graph.
#[test]
fn det_rounds_brute_force_up_to_6() {
    for n in 2..=6usize {
        for r in 1..=3u32 {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let g = graph_from_mask(n, mask);
                let mut s = OracleSession::with_round_limit(&g, r);
                let out = run_det_rounds(&mut s, r).unwrap();
                assert!(outcome_correct(&g, out), "n={n} r={r} mask={mask:#x} -> {out:?}");
                assert!(s.queries_used() as f64 <= det_budget(n, r));
            }
        }
    }
}

#[test]
fn det_rounds_larger_n_planted_edges() {
    for (n, r) in [(16, 2), (50, 2), (64, 3), (100, 4), (257, 3), (300, 2)] {
        let mut rng = StreamKey::new(3, "det_rounds", n as u64).rng();
        for _ in 0..40 {
            let g = hidden_edge::generators::single_edge(n, &mut rng);
            let mut s = OracleSession::with_round_limit(&g, r);
            let out = run_det_rounds(&mut s, r).unwrap();
            assert_eq!(out.edge(), Some(g.edges()[0]));
            assert!(s.queries_used() as f64 <= det_budget(n, r));
        }
        let g = HiddenGraph::empty(n);
        let mut s = OracleSession::with_round_limit(&g, r);
        assert_eq!(run_det_rounds(&mut s, r).unwrap(), FindOutcome::NoEdgeFound);
    }
}

#[test]
fn n16_r2_trace() {
    assert_eq!(partition_params(16, 2), (12, 2));
    let mut worst = 0;
    for e in hidden_edge::exhaustive::all_pairs(16) {
        let g = HiddenGraph::from_edges(16, [(e.u(), e.v())]).unwrap();
        let mut s = OracleSession::with_round_limit(&g, 2);
        assert_eq!(run_det_rounds(&mut s, 2).unwrap(), FindOutcome::FoundEdge(e));
        worst = worst.max(s.queries_used());
    }
    assert!(worst <= 72, "{worst}");
}

#[test]
fn binary_search_all_single_edges_up_to_32() {
    for n in 2..=32usize {
        for e in hidden_edge::exhaustive::all_pairs(n) {
            let g = HiddenGraph::from_edges(n, [(e.u(), e.v())]).unwrap();
            let mut s = OracleSession::new(&g);
            assert_eq!(run_binary_search(&mut s).unwrap(), FindOutcome::FoundEdge(e), "n={n}");
            assert!(s.rounds_used() <= ceil_log2(n).max(1), "n={n} rounds {}", s.rounds_used());
            assert!(s.queries_used() <= 6 * s.rounds_used() as u64);
        }
    }
}

#[test]
fn binary_search_exact_on_all_graphs_up_to_10() {
    for n in 2..=10usize {
        let rep = explore_transcripts(n, None, run_binary_search);
        assert!(rep.is_exact(), "n={n}: {:?}", rep.counterexamples);
        assert!(rep.max_rounds <= ceil_log2(n).max(1));
    }
}

#[test]
fn det_with_enough_rounds_matches_binary_search() {
    let mut rng = StreamKey::new(9, "det_vs_bs", 0).rng();
    for n in [5usize, 16, 33, 64, 100] {
        let r = ceil_log2(n);
        for _ in 0..30 {
            let g = hidden_edge::generators::gnp(n, 3.0 / n as f64, &mut rng);
            let mut a = OracleSession::with_round_limit(&g, r);
            let mut b = OracleSession::new(&g);
            assert_eq!(run_det_rounds(&mut a, r).unwrap(), run_binary_search(&mut b).unwrap());
        }
    }
}

#[test]
fn partition_covers_every_pair() {
    for r in 1..=5u32 {
        for m in 2..=2048usize {
            // Working sets need not be a prefix of V.
            let working: Vec<usize> = (0..m).map(|i| 2 * i + 1).collect();
            let p = Partition::round_robin(2 * m + 1, &working, r);
            let (k, _) = partition_params(m, r);
            assert_eq!(p.k, k);
            assert_eq!(p.blocks.len(), k.min(m));
            let mut owner = vec![usize::MAX; 2 * m + 1];
            for (i, b) in p.blocks.iter().enumerate() {
                assert!(!b.is_empty());
                for v in b.iter() {
                    assert_eq!(owner[v], usize::MAX, "blocks overlap");
                    owner[v] = i;
                }
            }
            // Disjoint cover of the working set: any pair {a, b} lies in the
            // union of its two owner blocks (one block when they coincide).
            assert!(working.iter().all(|&v| owner[v] != usize::MAX));
            assert_eq!(owner.iter().filter(|&&o| o != usize::MAX).count(), m);
            assert_eq!(p.max_block(), m.div_ceil(k.min(m)));
        }
    }
}

/// `k·t >= n` holds except where flooring `t` loses a whole row of blocks:
/// `n <= 3`, and `r = 2` just below the steps of `⌊½√n⌋`. There the
/// round-robin blocks hold `t + 1` vertices.
#[test]
fn partition_formula_gap_is_exactly_known() {
    for r in 2..=5u32 {
        for n in 2..=2048usize {
            let (k, t) = partition_params(n, r);
            let p = Partition::round_robin(n, &(0..n).collect::<Vec<_>>(), r);
            if k * t >= n {
                assert!(p.max_block() <= t.max(1), "n={n} r={r}");
            } else {
                assert!(n <= 3 || r == 2, "unexpected gap at n={n} r={r}");
                assert!(p.max_block() <= t + 1);
            }
        }
    }
}

#[test]
fn rand_rounds_r1_is_the_general_plan() {
    let g = HiddenGraph::from_edges(40, [(7, 31)]).unwrap();
    let mut s = OracleSession::with_round_limit(&g, 1);
    let out = run_rand_rounds(&mut s, 1, 1.0, &mut StreamKey::new(5, "rr", 0).rng()).unwrap();
    let plan = build_general_plan(GeneralPlanConfig::new(40, 1.0), &mut StreamKey::new(5, "rr", 0).rng());
    let mut s2 = OracleSession::new(&g);
    let q = plan.len() as u64;
    assert_eq!(plan.run(&mut s2).unwrap(), out);
    assert_eq!(s.queries_used(), q);
}

#[test]
fn rand_rounds_budget_and_rounds() {
    for (n, r) in [(64, 2), (64, 3), (200, 2), (256, 3)] {
        let bound = 2000.0 * 6.0 * r as f64 * (n as f64).powf(1.0 / r as f64) * (n as f64).ln().powi(3);
        for trial in 0..5 {
            let mut rng = StreamKey::new(17, "rand_rounds", trial).rng();
            let g = hidden_edge::generators::single_edge(n, &mut rng);
            let mut s = OracleSession::with_round_limit(&g, r);
            let out = run_rand_rounds(&mut s, r, 6.0, &mut rng).unwrap();
            assert!(!hidden_edge::exhaustive::is_wrong_pair(&g, out));
            assert_eq!(out.edge(), Some(g.edges()[0]), "n={n} r={r}");
            assert!(s.rounds_used() <= r);
            assert!((s.queries_used() as f64) <= bound);
        }
        let g = HiddenGraph::empty(n);
        let mut s = OracleSession::with_round_limit(&g, r);
        let out = run_rand_rounds(&mut s, r, 6.0, &mut StreamKey::new(1, "e", 0).rng()).unwrap();
        assert_eq!(out, FindOutcome::NoEdgeFound);
    }
}

#[test]
fn rand_rounds_never_reports_a_non_edge() {
    let mut rng = StreamKey::new(23, "rand_rounds_dense", 0).rng();
    for n in [20usize, 64] {
        for p in [0.05, 0.3, 1.0] {
            for _ in 0..4 {
                let g = hidden_edge::generators::gnp(n, p, &mut rng);
                let mut s = OracleSession::with_round_limit(&g, 2);
                let out = run_rand_rounds(&mut s, 2, 2.0, &mut rng).unwrap();
                if let Some(e) = out.edge() {
                    assert!(g.contains_edge(e));
                }
            }
        }
    }
}
