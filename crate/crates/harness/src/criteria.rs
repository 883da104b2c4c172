// SPDX-License-Identifier: Apache-2.0
//! Acceptance criteria as executable checks. Each returns a [`Verdict`]
//! holding one line per sub-check.

use crate::experiment::{run_experiment, ExperimentConfig, Report};
use crate::registry::{Algorithm, Family};
use crate::report::{to_csv, to_json};
use hidden_edge::adversary::{clique_family_limit, hard_star_sample, verify_clique_defeat, verify_general_defeat};
use hidden_edge::exhaustive::{all_pairs, explore_transcripts, is_wrong_pair, outcome_correct};
use hidden_edge::families::{
    clique_det_build, clique_rand_build, matching_det_build, matching_det_query_count, matching_rand_build,
    op_build,
};
use hidden_edge::multi_round::{run_binary_search, run_det_rounds};
use hidden_edge::nonadaptive::{build_general_plan, GeneralPlanConfig};
use hidden_edge::oracle::RoundPlan;
use hidden_edge::rng::StreamKey;
use hidden_edge::single_edge::{build_explicit, build_known_endpoint, build_randomized};
use hidden_edge::{generators, Edge, FindOutcome, HiddenGraph, OracleSession, VertexSet};
use rand::Rng;
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Verdict {
    fn new(id: u8, name: &'static str) -> Self {
        Verdict {
            id,
            name,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn result(&mut self, label: impl Into<String>, r: Result<String, String>) {
        match r {
            Ok(d) => self.check(label, true, d),
            Err(d) => self.check(label, false, d),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |p: bool| if p { "PASS" } else { "FAIL" };
        writeln!(f, "{} criterion {}: {}", word(self.pass()), self.id, self.name)?;
        for c in &self.checks {
            writeln!(f, "    {} {}: {}", word(c.pass), c.label, c.detail)?;
        }
        Ok(())
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Largest failure count consistent with rate `p` plus three binomial
/// standard deviations over `trials`.
pub fn allowed_failures(p: f64, trials: u64) -> f64 {
    let t = trials as f64;
    t * (p + 3.0 * (p * (1.0 - p) / t).sqrt())
}

fn run_plan_answers(round: &RoundPlan, g: &HiddenGraph) -> Vec<bool> {
    let mut s = OracleSession::new(g);
    s.submit_round(round.clone()).expect("fresh session").to_vec()
}

fn family_of(round: &RoundPlan) -> Vec<VertexSet> {
    (0..round.len()).map(|i| round.get(i).to_owned()).collect()
}

// ---------------------------------------------------------------- criterion 1

fn explicit_single_edges() -> Result<String, String> {
    let mut graphs = 0;
    for n in 2..=64usize {
        let plan = build_explicit(&VertexSet::full(n)).map_err(|e| e.to_string())?;
        let bound = 4 * ceil_log2(n + 1) + 1;
        if plan.len() > bound {
            return Err(format!("n={n}: {} queries > {bound}", plan.len()));
        }
        for e in all_pairs(n) {
            let g = HiddenGraph::from_edges(n, [(e.u(), e.v())]).expect("simple");
            let out = plan.decode(&run_plan_answers(plan.round_plan(), &g)).expect("aligned");
            if out != FindOutcome::FoundEdge(e) {
                return Err(format!("n={n} edge {e:?} -> {out:?}"));
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} single-edge graphs, n in 2..=64"))
}

fn star_expected(v: usize, leaves: &[usize]) -> FindOutcome {
    match leaves {
        [] => FindOutcome::NoEdgeFound,
        [u] => FindOutcome::FoundEdge(Edge::new(v, *u)),
        _ => FindOutcome::MoreThanOne,
    }
}

/// Every star for `n <= 14`. Above that, every star with at most two
/// leaves: two distinct leaves differ in some rank bit, which makes both
/// queries of that bit positive, and extra leaves only add positives, so
/// the two-leaf stars already fix the outcome of every larger star.
fn known_endpoint_stars() -> Result<String, String> {
    let mut graphs = 0u64;
    for n in 2..=64usize {
        let bound = 2 * ceil_log2(n);
        for v in 0..n {
            let target = VertexSet::from_members(n, (0..n).filter(|&u| u != v));
            let plan = build_known_endpoint(&target, v).map_err(|e| e.to_string())?;
            if plan.len() > bound {
                return Err(format!("n={n}: {} queries > {bound}", plan.len()));
            }
            let others: Vec<usize> = target.iter().collect();
            let mut check = |leaves: &[usize]| -> Result<(), String> {
                let g = HiddenGraph::from_edges(n, leaves.iter().map(|&u| (u.min(v), u.max(v)))).expect("simple");
                let out = plan.decode(&run_plan_answers(plan.round_plan(), &g)).expect("aligned");
                graphs += 1;
                if out == star_expected(v, leaves) {
                    Ok(())
                } else {
                    Err(format!("n={n} center {v} leaves {leaves:?} -> {out:?}"))
                }
            };
            if n <= 14 {
                for mask in 0..1u32 << (n - 1) {
                    let leaves: Vec<usize> = (0..n - 1).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]).collect();
                    check(&leaves)?;
                }
            } else {
                check(&[])?;
                for (i, &a) in others.iter().enumerate() {
                    check(&[a])?;
                    for &b in &others[i + 1..] {
                        check(&[a, b])?;
                    }
                }
            }
        }
    }
    Ok(format!("{graphs} stars, n in 2..=64"))
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Per query, the mask of vertex pairs it contains (`n <= 11`).
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

fn overlapping_products() -> Result<String, String> {
    let mut graphs = 0;
    for n in 2..=10usize {
        let p = op_build(n);
        let bound = n * ceil_log2(n);
        if p.len() > bound {
            return Err(format!("n={n}: {} queries > {bound}", p.len()));
        }
        let inside = inside_masks(n, &p.round);
        let mut seen = std::collections::HashSet::new();
        for a_set in 0..1u32 << n {
            for b_set in 0..1u32 << n {
                let mut g = 0u64;
                for a in (0..n).filter(|&a| a_set >> a & 1 == 1) {
                    for b in (0..n).filter(|&b| b_set >> b & 1 == 1 && b != a) {
                        g |= 1 << pair_index(n, a.min(b), a.max(b));
                    }
                }
                if !seen.insert(g) {
                    continue;
                }
                let answers: Vec<bool> = inside.iter().map(|&q| q & g != 0).collect();
                let out = p.decode(&answers).expect("aligned");
                let ok = match out {
                    FindOutcome::FoundEdge(e) => g >> pair_index(n, e.u(), e.v()) & 1 == 1,
                    FindOutcome::NoEdgeFound => g == 0,
                    _ => false,
                };
                if !ok {
                    return Err(format!("n={n} edge mask {g:#x} -> {out:?}"));
                }
                graphs += 1;
            }
        }
    }
    Ok(format!("{graphs} distinct overlapping products, n in 2..=10"))
}

fn all_cliques() -> Result<String, String> {
    let mut graphs = 0;
    for n in 2..=12usize {
        let p = clique_det_build(n);
        if p.len() > 3 * n {
            return Err(format!("n={n}: {} queries > {}", p.len(), 3 * n));
        }
        for s in 0..1u32 << n {
            let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            let g = generators::clique_on(n, &members);
            let out = p.decode(&run_plan_answers(&p.round, &g)).expect("aligned");
            if !outcome_correct(&g, out) {
                return Err(format!("n={n} clique {members:?} -> {out:?}"));
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} cliques, n in 2..=12"))
}

fn binary_search_single_edges() -> Result<String, String> {
    let mut graphs = 0;
    for n in 2..=32usize {
        let rounds = ceil_log2(n).max(1) as u32;
        for e in all_pairs(n) {
            let g = HiddenGraph::from_edges(n, [(e.u(), e.v())]).expect("simple");
            let mut s = OracleSession::new(&g);
            let out = run_binary_search(&mut s).map_err(|x| x.to_string())?;
            if out != FindOutcome::FoundEdge(e) {
                return Err(format!("n={n} edge {e:?} -> {out:?}"));
            }
            if s.rounds_used() > rounds || s.queries_used() > 6 * s.rounds_used() as u64 {
                return Err(format!("n={n}: {} rounds, {} queries", s.rounds_used(), s.queries_used()));
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} single-edge graphs, n in 2..=32"))
}

fn det_rounds_all_graphs() -> Result<String, String> {
    let mut leaves = 0;
    for n in 2..=8usize {
        for r in 1..=3u32 {
            let rep = explore_transcripts(n, Some(r), |s| run_det_rounds(s, r));
            let budget = 10.0 * r as f64 * (n as f64).powf(2.0 / r as f64);
            if !rep.is_exact() {
                return Err(format!("n={n} r={r}: {:?} {:?}", rep.counterexamples, rep.errors));
            }
            if rep.max_rounds > r || rep.max_queries as f64 > budget {
                return Err(format!("n={n} r={r}: {} rounds, {} queries", rep.max_rounds, rep.max_queries));
            }
            leaves += rep.leaves;
        }
    }
    Ok(format!("every graph on n <= 8, r in 1..=3 ({leaves} answer transcripts)"))
}

pub fn criterion_1() -> Verdict {
    let mut v = Verdict::new(1, "exhaustive exactness");
    v.result("explicit single edge", explicit_single_edges());
    v.result("known endpoint", known_endpoint_stars());
    v.result("overlapping product", overlapping_products());
    v.result("clique_det", all_cliques());
    v.result("binary search", binary_search_single_edges());
    v.result("det_rounds", det_rounds_all_graphs());
    v
}

// ---------------------------------------------------------------- criterion 2

const GENERAL_FAMILIES: [&str; 5] = ["complete", "planted_single_edge", "planted_star", "matching", "hard_star"];

fn general_family_graph(which: usize, n: usize, trial: u64, rng: &mut hidden_edge::rng::StreamRng) -> HiddenGraph {
    match which {
        0 => generators::complete(n),
        1 => generators::single_edge(n, rng),
        2 => {
            // Degrees √n·2^j, j = 0..=½log n, cycling over trials.
            let top = ((n as f64).log2() / 2.0).floor() as u64;
            let j = trial % (top + 1);
            let d = ((n as f64).sqrt() * 2f64.powi(j as i32)).round() as usize;
            generators::star(n, d.min(n - 1), rng)
        }
        3 => generators::matching(n, n / 4, rng),
        _ => hard_star_sample(n, rng),
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    fail: u64,
    wrong: u64,
    over_budget: u64,
    max_queries: u64,
}

impl Tally {
    fn add(mut self, o: Tally) -> Tally {
        self.fail += o.fail;
        self.wrong += o.wrong;
        self.over_budget += o.over_budget;
        self.max_queries = self.max_queries.max(o.max_queries);
        self
    }
}

/// One plan per trial, shared by the five families; each family draws its
/// own graph.
pub fn criterion_2_with(sizes: &[usize], trials: u64, seed: u64) -> Verdict {
    let mut v = Verdict::new(2, "general one-round Monte Carlo");
    for &n in sizes {
        let cfg = GeneralPlanConfig::new(n, 1.0);
        let budget = cfg.budget();
        let tallies = (0..trials)
            .into_par_iter()
            .map(|t| {
                let key = StreamKey::new(seed, &format!("criterion2/{n}"), t);
                let plan = build_general_plan(cfg, &mut key.derive("plan").rng());
                let mut out = [Tally::default(); 5];
                for (f, tally) in out.iter_mut().enumerate() {
                    let g = general_family_graph(f, n, t, &mut key.derive(GENERAL_FAMILIES[f]).rng());
                    let mut s = OracleSession::new(&g);
                    let answers = s.submit_round(plan.round.clone()).expect("fresh session");
                    let o = plan.decode(&answers).expect("aligned");
                    *tally = Tally {
                        fail: u64::from(!outcome_correct(&g, o)),
                        wrong: u64::from(is_wrong_pair(&g, o)),
                        over_budget: u64::from(s.queries_used() as f64 > budget || s.rounds_used() > 1),
                        max_queries: s.queries_used(),
                    };
                }
                out
            })
            .reduce(
                || [Tally::default(); 5],
                |a, b| std::array::from_fn(|i| a[i].add(b[i])),
            );
        let allowed = allowed_failures(1.0 / n as f64, trials);
        for (f, t) in tallies.iter().enumerate() {
            let pass = t.fail as f64 <= allowed && t.wrong as f64 <= 0.001 * trials as f64 && t.over_budget == 0;
            v.check(
                format!("n={n} {}", GENERAL_FAMILIES[f]),
                pass,
                format!(
                    "{} failures (allowed {allowed:.2}), {} wrong pairs, max {} queries (budget {budget:.0})",
                    t.fail, t.wrong, t.max_queries
                ),
            );
        }
    }
    v
}

pub fn criterion_2() -> Verdict {
    criterion_2_with(&[64, 128, 256], 1000, 2)
}

// ---------------------------------------------------------------- criterion 3

pub fn criterion_3_with(n: usize, trials: u64, seed: u64) -> Verdict {
    let mut v = Verdict::new(3, "randomized family finders");
    let bound = 500.0 * (n as f64).ln() * (n as f64).log2().powi(2);
    for clique in [true, false] {
        let name = if clique { "clique_rand" } else { "matching_rand" };
        let t = (0..trials)
            .into_par_iter()
            .map(|t| {
                let key = StreamKey::new(seed, &format!("criterion3/{name}/{n}"), t);
                let mut rng = key.derive("graph").rng();
                let g = if clique {
                    let k = rng.gen_range(2..=n);
                    generators::clique(n, k, &mut rng)
                } else {
                    let m = rng.gen_range(1..=n / 2);
                    generators::matching(n, m, &mut rng)
                };
                let mut rng = key.derive("algorithm").rng();
                let mut s = OracleSession::new(&g);
                let o = if clique {
                    clique_rand_build(n, 1.0, &mut rng).run(&mut s)
                } else {
                    matching_rand_build(n, 1.0, &mut rng).run(&mut s)
                }
                .expect("fresh session");
                Tally {
                    fail: u64::from(!outcome_correct(&g, o)),
                    wrong: u64::from(is_wrong_pair(&g, o)),
                    over_budget: u64::from(s.queries_used() as f64 > bound),
                    max_queries: s.queries_used(),
                }
            })
            .reduce(Tally::default, Tally::add);
        let allowed = allowed_failures(1.0 / n as f64, trials);
        v.check(
            format!("{name} n={n} c=1"),
            t.fail as f64 <= allowed && t.wrong == 0 && t.over_budget == 0,
            format!(
                "{} failures (allowed {allowed:.2}), {} wrong pairs, max {} queries",
                t.fail, t.wrong, t.max_queries
            ),
        );
    }
    let mut worst = 0.0f64;
    let mut pass = true;
    for n in [16usize, 64, 256, 1024, 4096] {
        let c = 1.0 / (n as f64).ln();
        let limit = 500.0 * (n as f64).log2().powi(2);
        for t in 0..3 {
            let mut rng = StreamKey::new(seed, "criterion3/low_c", t).rng();
            for len in [clique_rand_build(n, c, &mut rng).len(), matching_rand_build(n, c, &mut rng).len()] {
                worst = worst.max(len as f64 / limit);
                pass &= len as f64 <= limit;
            }
        }
    }
    v.check(
        "c = 1/ln n query count",
        pass,
        format!("largest count is {:.1}% of 500 log2^2 n over n in {{16, ..., 4096}}", 100.0 * worst),
    );
    v
}

pub fn criterion_3() -> Verdict {
    criterion_3_with(256, 1000, 3)
}

// ---------------------------------------------------------------- criterion 4

fn subset(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// Calls `f` on every strictly increasing index tuple of length `<= k` over `0..m`.
fn for_each_combination(m: usize, k: usize, f: &mut impl FnMut(&[usize]) -> Result<(), String>) -> Result<(), String> {
    fn go(
        m: usize,
        k: usize,
        from: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Result<(), String>,
    ) -> Result<(), String> {
        f(cur)?;
        if cur.len() == k {
            return Ok(());
        }
        for i in from..m {
            cur.push(i);
            go(m, k, i + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    go(m, k, 0, &mut Vec::new(), f)
}

fn enumerate_families(
    sets: &[VertexSet],
    max_len: usize,
    mut verify: impl FnMut(&[VertexSet]) -> Result<(), String>,
) -> Result<usize, String> {
    let mut count = 0;
    for_each_combination(sets.len(), max_len, &mut |idx| {
        let fam: Vec<VertexSet> = idx.iter().map(|&i| sets[i].clone()).collect();
        count += 1;
        verify(&fam).map_err(|e| format!("family {idx:?}: {e}"))
    })?;
    Ok(count)
}

fn random_set(n: usize, rng: &mut impl Rng) -> VertexSet {
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        VertexSet::from_members(n, [a, b])
    } else {
        let k = rng.gen_range(1..=n);
        VertexSet::from_members(n, rand::seq::index::sample(rng, n, k).into_iter())
    }
}

fn general_enumerated(seed: u64, random_per_n: usize) -> Result<String, String> {
    let mut total = 0;
    for n in 2..=4usize {
        let sets: Vec<VertexSet> = (0..1u64 << n).map(|m| subset(n, m)).collect();
        total += enumerate_families(&sets, binom2(n) - 1, |f| {
            verify_general_defeat(n, f).map(|_| ()).map_err(|e| format!("n={n}: {e}"))
        })?;
    }
    // n = 5: every family of at most six sets with two or more members.
    let sets: Vec<VertexSet> = (0..1u64 << 5).filter(|m| m.count_ones() >= 2).map(|m| subset(5, m)).collect();
    total += enumerate_families(&sets, 6, |f| verify_general_defeat(5, f).map(|_| ()).map_err(|e| e.to_string()))?;
    for n in 5..=10usize {
        let mut rng = StreamKey::new(seed, "criterion4/general", n as u64).rng();
        for _ in 0..random_per_n {
            let size = rng.gen_range(0..binom2(n));
            let fam: Vec<VertexSet> = (0..size).map(|_| random_set(n, &mut rng)).collect();
            verify_general_defeat(n, &fam).map_err(|e| format!("n={n} random family: {e}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} families over n <= 10 defeated"))
}

fn general_builders(seed: u64) -> Result<String, String> {
    let mut count = 0;
    for n in 4..=64usize {
        let mut rng = StreamKey::new(seed, "criterion4/builders", n as u64).rng();
        let full = VertexSet::full(n);
        let all_but_last = VertexSet::range(n, 0, n - 1);
        let rounds = [
            ("overlapping_product", op_build(n).round),
            ("clique_det", clique_det_build(n).round),
            ("matching_det", matching_det_build(n).round),
            ("clique_rand", clique_rand_build(n, 1.0, &mut rng).round),
            ("matching_rand", matching_rand_build(n, 1.0, &mut rng).round),
            ("single_edge_explicit", build_explicit(&full).expect("n >= 2").into_round_plan()),
            ("single_edge_rand", build_randomized(&full, &mut rng).expect("n >= 2").into_round_plan()),
            (
                "known_endpoint",
                build_known_endpoint(&all_but_last, n - 1).expect("disjoint").into_round_plan(),
            ),
        ];
        for (name, round) in rounds {
            if round.len() < binom2(n) {
                verify_general_defeat(n, &family_of(&round)).map_err(|e| format!("{name} n={n}: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} builder families with fewer than C(n,2) queries, n in 4..=64"))
}

fn clique_enumerated(seed: u64, random_per_n: usize) -> Result<String, String> {
    let mut total = 0;
    for n in 2..=7usize {
        let sets: Vec<VertexSet> = (0..1u64 << n).map(|m| subset(n, m)).collect();
        total += enumerate_families(&sets, clique_family_limit(n), |f| {
            verify_clique_defeat(n, f).map(|_| ()).map_err(|e| format!("n={n}: {e}"))
        })?;
    }
    for n in 8..=12usize {
        let mut rng = StreamKey::new(seed, "criterion4/clique", n as u64).rng();
        let limit = clique_family_limit(n);
        for _ in 0..random_per_n {
            let size = rng.gen_range(0..=limit);
            let fam: Vec<VertexSet> = (0..size).map(|_| random_set(n, &mut rng)).collect();
            verify_clique_defeat(n, &fam).map_err(|e| format!("n={n} random family: {e}"))?;
            total += 1;
        }
        // Prefixes of the deterministic builders, cut to the limit.
        for round in [clique_det_build(n).round, op_build(n).round, matching_det_build(n).round] {
            let fam: Vec<VertexSet> = family_of(&round).into_iter().take(limit).collect();
            verify_clique_defeat(n, &fam).map_err(|e| format!("n={n} builder prefix: {e}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} families of at most n/2 - 1 queries over n <= 12 defeated"))
}

pub fn criterion_4_with(seed: u64, random_per_n: usize) -> Verdict {
    let mut v = Verdict::new(4, "adversary defeat");
    v.result("general, enumerated", general_enumerated(seed, random_per_n));
    v.result("general, repo builders", general_builders(seed));
    v.result("clique, enumerated", clique_enumerated(seed, random_per_n));
    v
}

pub fn criterion_4() -> Verdict {
    criterion_4_with(4, 3000)
}

// ---------------------------------------------------------------- criterion 5

/// The level recurrence, evaluated independently of the library:
/// `f(n) = f(⌈n/2⌉) + f(⌊n/2⌋) + ⌊n/2⌋·g(⌈n/2⌉)` with `g(1) = 1` and
/// `g(s) = 2⌈log2 s⌉`.
pub fn matching_recurrence(max_n: usize) -> Vec<usize> {
    let mut f = vec![0usize; max_n + 1];
    for n in 2..=max_n {
        let (lo, hi) = (n / 2, n - n / 2);
        let g = if hi == 1 { 1 } else { 2 * ceil_log2(hi) };
        f[n] = f[hi] + f[lo] + lo * g;
    }
    f
}

fn matching_counts() -> Result<String, String> {
    let f = matching_recurrence(4096);
    for (n, &want) in f.iter().enumerate() {
        let got = matching_det_query_count(n);
        if got != want {
            return Err(format!("n={n}: count {got}, recurrence {want}"));
        }
    }
    let spots: Vec<usize> = (0..=256).chain([511, 1000, 1023, 2048, 4095, 4096]).collect();
    for &n in &spots {
        let built = matching_det_build(n).len();
        if built != f[n] {
            return Err(format!("n={n}: built plan has {built} queries, recurrence {}", f[n]));
        }
    }
    Ok(format!("count equals recurrence for n <= 4096; built plan agrees at {} sizes", spots.len()))
}

fn rand_rounds_reports(sizes: &[usize], trials: u64, seed: u64) -> Vec<(u32, Report)> {
    [2u32, 3]
        .iter()
        .map(|&r| {
            let mut cfg = ExperimentConfig::new(Algorithm::RandRounds, Family::PlantedSingleEdge, sizes.to_vec());
            cfg.trials = trials;
            cfg.c = 6.0;
            cfg.r = r;
            cfg.seed = seed;
            (r, run_experiment(&cfg).expect("valid config"))
        })
        .collect()
}

pub fn criterion_5_with(sizes: &[usize], trials: u64, seed: u64) -> Verdict {
    let mut v = Verdict::new(5, "budget formulas");
    v.result("matching_det recurrence", matching_counts());
    for (r, report) in rand_rounds_reports(sizes, trials, seed) {
        for row in &report.per_n {
            let n = row.n as f64;
            let p = r as f64 * n.powf(-6.0 / r as f64);
            let allowed = allowed_failures(p, trials);
            let failures = (1.0 - row.success_rate) * trials as f64;
            let bound = Algorithm::RandRounds.query_budget(row.n, 6.0, r);
            v.check(
                format!("rand_rounds n={} r={r} c=6", row.n),
                row.budget_ok && failures <= allowed + 1e-9 && row.wrong_pair_rate == 0.0,
                format!(
                    "{failures:.0} failures (allowed {allowed:.2}), max {} queries (bound {bound:.0}), max {} rounds",
                    row.queries_max, row.rounds_max
                ),
            );
        }
    }
    v
}

pub fn criterion_5() -> Verdict {
    criterion_5_with(&[64, 256, 1024], 1000, 5)
}

// ---------------------------------------------------------------- criterion 6

fn reports_in_pool(threads: usize, configs: &[ExperimentConfig]) -> Vec<(String, String)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("pool");
    pool.install(|| {
        configs
            .iter()
            .map(|cfg| {
                let r = run_experiment(cfg).expect("valid config");
                (to_json(&r).expect("json"), to_csv(&r).expect("csv"))
            })
            .collect()
    })
}

pub fn criterion_6() -> Verdict {
    let mut v = Verdict::new(6, "determinism");
    let mk = |a, f, n: Vec<usize>, trials, r| {
        let mut c = ExperimentConfig::new(a, f, n);
        c.trials = trials;
        c.r = r;
        c.seed = 6;
        c
    };
    let configs = vec![
        mk(Algorithm::GeneralNonadaptive, Family::PlantedStar, vec![16, 40], 24, 1),
        mk(Algorithm::RandRounds, Family::Gnp, vec![64], 16, 2),
        mk(Algorithm::CliqueRand, Family::Clique, vec![50], 24, 1),
        mk(Algorithm::DetRounds, Family::Matching, vec![30], 12, 3),
    ];
    let one = reports_in_pool(1, &configs);
    let again = reports_in_pool(1, &configs);
    let four = reports_in_pool(4, &configs);
    v.check(
        "reports byte-identical across runs and thread counts",
        one == again && one == four,
        format!("{} reports, JSON and CSV, 1 and 4 threads", configs.len()),
    );
    let key = StreamKey::new(6, "criterion6/plan", 0);
    let cfg = GeneralPlanConfig::new(48, 1.0);
    let a = build_general_plan(cfg, &mut key.rng());
    let b = build_general_plan(cfg, &mut key.rng());
    v.check("plans identical per seed", a == b, format!("{} queries", a.len()));
    let dumps: Vec<_> = (0..2)
        .map(|_| crate::experiment::dump_trial(&configs[1], 64, 3).expect("valid config"))
        .collect();
    v.check(
        "query dumps identical per seed",
        dumps[0] == dumps[1],
        format!("{} recorded queries", dumps[0].queries.len()),
    );
    v
}

pub fn all() -> Vec<Verdict> {
    vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6()]
}
