// SPDX-License-Identifier: Apache-2.0
//! Family finders: exhaustive exactness on their families, query ceilings,
//! and off-family behaviour.

use hidden_edge::exhaustive::{graph_from_mask, is_wrong_pair, outcome_correct};
use hidden_edge::families::clique::{clique_ladder, clique_rand_samples_per_rung};
use hidden_edge::families::matching::{matching_det_query_count, matching_ladder, matching_rand_samples_per_rung};
use hidden_edge::families::{
    clique_det_build, clique_rand_build, is_clique, is_matching, matching_det_build, matching_rand_build, op_build,
};
use hidden_edge::oracle::RoundPlan;
use hidden_edge::rng::StreamKey;
use hidden_edge::single_edge::known_endpoint_query_count;
use hidden_edge::{generators, Edge, FindOutcome, HiddenGraph, OracleSession};
use std::collections::HashSet;

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Per query, the mask of pairs it contains.
fn inside_masks(n: usize, round: &RoundPlan) -> Vec<u64> {
    (0..round.len())
        .map(|i| {
            let m: Vec<usize> = round.get(i).iter().collect();
            let mut mask = 0u64;
            for (x, &a) in m.iter().enumerate() {
                for &b in &m[x + 1..] {
                    mask |= 1 << pair_index(n, a, b);
                }
            }
            mask
        })
        .collect()
}

fn answers_for(inside: &[u64], graph: u64) -> Vec<bool> {
    inside.iter().map(|&q| q & graph != 0).collect()
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

fn mask_correct(n: usize, graph: u64, out: FindOutcome) -> bool {
    match out {
        FindOutcome::FoundEdge(e) => graph >> pair_index(n, e.u(), e.v()) & 1 == 1,
        FindOutcome::NoEdgeFound => graph == 0,
        _ => false,
    }
}

#[test]
fn overlapping_product_exact_on_family_up_to_10() {
    for n in 2..=10usize {
        let p = op_build(n);
        assert!(p.len() <= n * ceil_log2(n), "n={n} q={}", p.len());
        let inside = inside_masks(n, &p.round);
        // Row masks: for vertex a and set B, the pairs {a, b}, b in B.
        let mut graphs = HashSet::new();
        for a_set in 0..1u32 << n {
            for b_set in 0..1u32 << n {
                let mut g = 0u64;
                for a in (0..n).filter(|&a| a_set >> a & 1 == 1) {
                    for b in (0..n).filter(|&b| b_set >> b & 1 == 1 && b != a) {
                        g |= 1 << pair_index(n, a, b);
                    }
                }
                graphs.insert(g);
            }
        }
        for &g in &graphs {
            let out = p.decode(&answers_for(&inside, g)).unwrap();
            assert!(mask_correct(n, g, out), "n={n} graph={g:#x} -> {out:?}");
        }
    }
}

#[test]
fn overlapping_product_query_ceiling() {
    for n in 1..=1024 {
        assert!(op_build(n).len() <= n * ceil_log2(n), "n={n}");
    }
}

#[test]
fn clique_det_exact_on_all_cliques_up_to_12() {
    for n in 1..=12usize {
        let p = clique_det_build(n);
        assert!(p.len() <= 3 * n);
        for s in 0..1u32 << n {
            let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            let g = generators::clique_on(n, &members);
            let mut sess = OracleSession::new(&g);
            let out = p.clone().run(&mut sess).unwrap();
            assert!(outcome_correct(&g, out), "n={n} clique={members:?} -> {out:?}");
        }
    }
}

/// Odd sizes with the middle vertex in a triangle.
#[test]
fn clique_det_odd_n_regressions() {
    for n in [5usize, 7, 9] {
        let p = clique_det_build(n);
        let mid = n / 2;
        for a in 0..n {
            for b in a + 1..n {
                if a == mid || b == mid {
                    continue;
                }
                let mut s = vec![a, b, mid];
                s.sort_unstable();
                let g = generators::clique_on(n, &s);
                let out = p.clone().run(&mut OracleSession::new(&g)).unwrap();
                assert!(outcome_correct(&g, out), "n={n} clique={s:?}");
            }
        }
    }
}

#[test]
fn clique_det_ceiling_large_n() {
    for n in [500usize, 1000, 1023, 1024, 1025, 4096] {
        assert!(clique_det_build(n).len() <= 3 * n, "n={n}");
    }
    let g = generators::clique(100, 5, &mut StreamKey::new(1, "c", 0).rng());
    let mut s = OracleSession::new(&g);
    let out = clique_det_build(100).run(&mut s).unwrap();
    assert!(outcome_correct(&g, out));
    assert!(s.queries_used() <= 300);
}

#[test]
fn matching_det_exact_on_all_matchings_up_to_10() {
    fn matchings(n: usize, from: usize, used: u32, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if from == n {
            out.push(cur.clone());
            return;
        }
        if used >> from & 1 == 1 {
            return matchings(n, from + 1, used, cur, out);
        }
        matchings(n, from + 1, used, cur, out);
        for b in from + 1..n {
            if used >> b & 1 == 0 {
                cur.push((from, b));
                matchings(n, from + 1, used | 1 << from | 1 << b, cur, out);
                cur.pop();
            }
        }
    }
    for n in 1..=10usize {
        let mut all = Vec::new();
        matchings(n, 0, 0, &mut Vec::new(), &mut all);
        let p = matching_det_build(n);
        let mut perfect = 0;
        for m in &all {
            let g = HiddenGraph::from_edges(n, m.iter().copied()).unwrap();
            assert!(is_matching(&g));
            let out = p.clone().run(&mut OracleSession::new(&g)).unwrap();
            assert!(outcome_correct(&g, out), "n={n} matching={m:?} -> {out:?}");
            perfect += usize::from(2 * m.len() == n);
        }
        if n == 8 {
            assert_eq!(perfect, 105);
        }
    }
}

/// Independent evaluation of the level recurrence with the singleton fix.
fn recurrence(n: usize, memo: &mut Vec<Option<usize>>) -> usize {
    if n < 2 {
        return 0;
    }
    if let Some(v) = memo[n] {
        return v;
    }
    let (lo, hi) = (n / 2, n.div_ceil(2));
    let g = if hi == 1 { 1 } else { 2 * ceil_log2(hi) };
    let v = recurrence(hi, memo) + recurrence(lo, memo) + lo * g;
    memo[n] = Some(v);
    v
}

/// The literal recurrence, which charges nothing to leaf pairs.
fn literal_recurrence(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let (lo, hi) = (n / 2, n.div_ceil(2));
    literal_recurrence(hi) + literal_recurrence(lo) + lo * 2 * ceil_log2(hi)
}

/// Nodes of the halving tree whose larger half is a single vertex.
fn leaf_pair_nodes(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 | 3 => 1 + leaf_pair_nodes(n / 2),
        _ => leaf_pair_nodes(n / 2) + leaf_pair_nodes(n.div_ceil(2)),
    }
}

#[test]
fn matching_det_count_matches_recurrence_up_to_4096() {
    let mut memo = vec![None; 4097];
    for n in 0..=4096 {
        let f = recurrence(n, &mut memo);
        assert_eq!(matching_det_query_count(n), f, "n={n}");
        assert_eq!(f, literal_recurrence(n) + leaf_pair_nodes(n), "n={n}");
    }
    for n in (0..=300).chain([511, 1000, 1024, 2047, 4095, 4096]) {
        assert_eq!(matching_det_build(n).len(), matching_det_query_count(n), "n={n}");
    }
    assert_eq!(known_endpoint_query_count(1), 1);
}

#[test]
fn literal_recurrence_misses_leaf_pairs() {
    // Under the literal count n=2 asks nothing, so it cannot see {0, 1}.
    assert_eq!(literal_recurrence(2), 0);
    let g = HiddenGraph::from_edges(2, [(0, 1)]).unwrap();
    let out = matching_det_build(2).run(&mut OracleSession::new(&g)).unwrap();
    assert_eq!(out, FindOutcome::FoundEdge(Edge::new(0, 1)));
}

#[test]
fn matching_det_is_sound_on_any_graph() {
    let mut rng = StreamKey::new(2, "matching_fuzz", 0).rng();
    for n in [8usize, 16, 33, 64] {
        let p = matching_det_build(n);
        for density in [0.02, 0.1, 0.3, 0.8] {
            for _ in 0..200 {
                let g = generators::gnp(n, density, &mut rng);
                let out = p.clone().run(&mut OracleSession::new(&g)).unwrap();
                assert!(!is_wrong_pair(&g, out), "n={n} {g:?} -> {out:?}");
            }
        }
    }
}

/// Crossed matchings {a1 b1, a2 b2} and {a1 b2, a2 b1} answer exactly like
/// K_{2,2}, so an overlapping-product decoder that is exact on its family
/// must name a K_{2,2} edge, which one of the two matchings lacks.
#[test]
fn overlapping_product_off_family_error_is_forced() {
    let n = 8;
    let p = op_build(n);
    let (a1, a2, b1, b2) = (0, 1, 4, 5);
    let k22 = generators::overlapping_product_on(n, &[a1, a2], &[b1, b2]);
    let m1 = HiddenGraph::from_edges(n, [(a1, b1), (a2, b2)]).unwrap();
    let m2 = HiddenGraph::from_edges(n, [(a1, b2), (a2, b1)]).unwrap();
    let answers = |g: &HiddenGraph| {
        let mut s = OracleSession::new(g);
        s.submit_round(p.round.clone()).unwrap().to_vec()
    };
    assert_eq!(answers(&m1), answers(&k22));
    assert_eq!(answers(&m2), answers(&k22));
    let out = p.decode(&answers(&k22)).unwrap();
    assert!(outcome_correct(&k22, out));
    assert!(is_wrong_pair(&m1, out) || is_wrong_pair(&m2, out));
}

/// For some clique answer pattern on n = 8, every edge an exact decoder may
/// name is absent from some other graph with the same answers.
#[test]
fn clique_det_off_family_error_is_forced() {
    let n = 8;
    let p = clique_det_build(n);
    let inside = inside_masks(n, &p.round);
    let clique_mask = |s: u32| {
        let mut g = 0u64;
        for a in 0..n {
            for b in a + 1..n {
                if s >> a & 1 == 1 && s >> b & 1 == 1 {
                    g |= 1 << pair_index(n, a, b);
                }
            }
        }
        g
    };
    let all_pairs = (1u64 << (n * (n - 1) / 2)) - 1;
    let mut forced = 0;
    for s in 0..1u32 << n {
        let g = clique_mask(s);
        if g == 0 {
            continue;
        }
        let a = answers_for(&inside, g);
        // Edges shared by every clique with these answers.
        let allowed = (0..1u32 << n)
            .map(clique_mask)
            .filter(|&h| answers_for(&inside, h) == a)
            .fold(all_pairs, |acc, h| acc & h);
        // Largest graph consistent with the negative answers.
        let maximal = inside
            .iter()
            .zip(&a)
            .filter(|(_, &ans)| !ans)
            .fold(all_pairs, |acc, (&q, _)| acc & !q);
        let refutable = |e: usize| {
            let without = maximal & !(1 << e);
            inside.iter().zip(&a).all(|(&q, &ans)| !ans || q & without != 0)
        };
        if (0..n * (n - 1) / 2).filter(|&e| allowed >> e & 1 == 1).all(refutable) {
            forced += 1;
        }
    }
    assert!(forced > 0);
}

#[test]
fn family_checks() {
    assert!(is_clique(&generators::clique_on(6, &[1, 3, 4])));
    assert!(!is_clique(&graph_from_mask(4, 0b101)));
}

fn clique_rand_count_bound(n: usize, c: f64) -> f64 {
    c * 500.0 * (n as f64).log2().powi(3)
}

#[test]
fn clique_rand_monte_carlo_small() {
    let (n, trials) = (256usize, 200);
    let mut fails = 0;
    for t in 0..trials {
        let mut rng = StreamKey::new(31, "clique_rand", t).rng();
        let g = generators::clique(n, 37, &mut rng);
        let p = clique_rand_build(n, 1.0, &mut rng);
        assert!(p.len() as f64 <= clique_rand_count_bound(n, 1.0));
        let out = p.run(&mut OracleSession::new(&g)).unwrap();
        assert!(!is_wrong_pair(&g, out));
        fails += usize::from(!outcome_correct(&g, out));
    }
    assert!(fails <= 2, "{fails} failures");
    let g = HiddenGraph::empty(n);
    let p = clique_rand_build(n, 1.0, &mut StreamKey::new(1, "cr", 0).rng());
    assert_eq!(p.run(&mut OracleSession::new(&g)).unwrap(), FindOutcome::NoEdgeFound);
}

/// At |S| = 37 the rung d = 32 catches exactly one edge with probability
/// well above 1/(8e).
#[test]
fn clique_rung_single_edge_frequency() {
    let n = 256;
    let d = 32.0;
    let mut rng = StreamKey::new(4, "rung", 0).rng();
    let members: Vec<usize> = (0..37).map(|i| i * 6).collect();
    let full = hidden_edge::VertexSet::full(n);
    let trials = 20_000;
    let mut hits = 0;
    for _ in 0..trials {
        let s = hidden_edge::rng::sample_subset(full.as_ref(), 1.0 / d, &mut rng).unwrap();
        let k = members.iter().filter(|&&v| s.contains(v)).count();
        hits += usize::from(k == 2);
    }
    let freq = hits as f64 / trials as f64;
    assert!(freq >= 0.8 / (8.0 * std::f64::consts::E), "{freq}");
}

#[test]
fn ladder_sizes() {
    assert_eq!(clique_ladder(256).len(), 8);
    assert_eq!(matching_ladder(256).len(), 8);
    assert_eq!(clique_rand_samples_per_rung(256, 1.0), (8.0 * std::f64::consts::E * 256f64.ln()).ceil() as usize);
    assert_eq!(matching_rand_samples_per_rung(256, 1.0), (2.0 * std::f64::consts::E * 256f64.ln()).ceil() as usize);
}

#[test]
fn matching_rand_monte_carlo_small() {
    let (n, trials) = (256usize, 200);
    let mut fails = 0;
    for t in 0..trials {
        let mut rng = StreamKey::new(37, "matching_rand", t).rng();
        let g = generators::matching(n, 20, &mut rng);
        let p = matching_rand_build(n, 1.0, &mut rng);
        let out = p.run(&mut OracleSession::new(&g)).unwrap();
        assert!(!is_wrong_pair(&g, out));
        fails += usize::from(!outcome_correct(&g, out));
    }
    assert!(fails <= 2, "{fails} failures");
    for t in 0..50 {
        let mut rng = StreamKey::new(38, "matching_single", t).rng();
        let g = generators::single_edge(n, &mut rng);
        let out = matching_rand_build(n, 1.0, &mut rng).run(&mut OracleSession::new(&g)).unwrap();
        assert!(outcome_correct(&g, out));
    }
}

/// With `c = 1 / ln n` both ladders stay within `500 log2² n` queries.
#[test]
fn low_c_counts_are_polylog() {
    for n in [16usize, 64, 256, 1000, 4096] {
        let c = 1.0 / (n as f64).ln();
        let bound = 500.0 * (n as f64).log2().powi(2);
        for t in 0..3 {
            let mut rng = StreamKey::new(5, "low_c", t).rng();
            assert!(matching_rand_build(n, c, &mut rng).len() as f64 <= bound, "matching n={n}");
            assert!(clique_rand_build(n, c, &mut rng).len() as f64 <= bound, "clique n={n}");
        }
    }
}

#[test]
fn randomized_family_decoders_are_sound_off_family() {
    let mut rng = StreamKey::new(41, "rand_fuzz", 0).rng();
    let (mut wrong, mut total) = (0, 0);
    for n in [16usize, 64] {
        for density in [0.05, 0.2, 0.6] {
            for _ in 0..100 {
                let g = generators::gnp(n, density, &mut rng);
                let out = clique_rand_build(n, 1.0, &mut rng).run(&mut OracleSession::new(&g)).unwrap();
                wrong += usize::from(is_wrong_pair(&g, out));
                let out = matching_rand_build(n, 1.0, &mut rng).run(&mut OracleSession::new(&g)).unwrap();
                wrong += usize::from(is_wrong_pair(&g, out));
                total += 2;
            }
        }
    }
    assert!(wrong as f64 <= 0.001 * total as f64, "{wrong}/{total}");
}
