//! Independent Cascade diffusion: the σ(S) estimator behind the experiments.
//!
//! Cascades run in synchronous rounds: every node, in the single round after
//! its own activation, makes exactly one Bernoulli(`p_act`) attempt per still
//! susceptible neighbor, and the process stops when a round activates nobody.
//! Replicate `r` draws from the stream seed `derive_seed(master, r)`, so
//! Monte Carlo results are independent of execution order and parallelism.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, hash_unit, seeded_rng};
use crate::score::{Method, ScoreTable};

/// The chosen initial spreaders.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    seeds: Vec<u32>,
    fraction: f64,
    method: Method,
}

impl SeedSet {
    /// Sorted, deduplicated seed indices.
    pub fn seeds(&self) -> &[u32] {
        &self.seeds
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn fraction(&self) -> f64 {
        self.fraction
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Assemble directly from indices (test fixtures and hand-picked seeds).
    pub fn from_nodes(method: Method, fraction: f64, mut seeds: Vec<u32>) -> SeedSet {
        seeds.sort_unstable();
        seeds.dedup();
        SeedSet {
            seeds,
            fraction,
            method,
        }
    }
}

/// Outcome of one cascade replicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeResult {
    pub infected_count: usize,
    pub infected_scale: f64,
    pub rounds: usize,
    pub replicate_seed: u64,
}

/// Pick the top `max(1, round(fraction·n))` nodes of the ranking.
/// Score ties were already resolved toward the lower dense index when the
/// table was built.
pub fn select_seeds(table: &ScoreTable, fraction: f64, n: usize) -> Result<SeedSet> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Parameter(format!(
            "spreader fraction must lie in (0, 1], got {fraction}"
        )));
    }
    if table.len() != n {
        return Err(Error::Contract(format!(
            "score table covers {} nodes, graph has {n}",
            table.len()
        )));
    }
    let k = ((fraction * n as f64 + 0.5).floor() as usize).max(1).min(n);
    let seeds = table.rank_order()[..k].to_vec();
    Ok(SeedSet::from_nodes(table.method(), fraction, seeds))
}

/// One synchronous-round cascade, deterministic for a fixed `replicate_seed`.
pub fn ic_single_run(g: &Graph, s: &SeedSet, p_act: f64, replicate_seed: u64) -> CascadeResult {
    run_cascade(g, s, p_act, replicate_seed, &mut |_, _| {})
}

/// Core loop shared with the attempt-audit tests: `on_attempt(u, v)` fires
/// for every Bernoulli attempt of an active `u` on a susceptible `v`.
fn run_cascade(
    g: &Graph,
    s: &SeedSet,
    p_act: f64,
    replicate_seed: u64,
    on_attempt: &mut dyn FnMut(u32, u32),
) -> CascadeResult {
    debug_assert!((0.0..=1.0).contains(&p_act));
    let n = g.n();
    let mut rng = seeded_rng(replicate_seed);
    let mut infected = vec![false; n];
    let mut frontier: Vec<u32> = s.seeds().to_vec();
    for &v in &frontier {
        infected[v as usize] = true;
    }
    let mut infected_count = frontier.len();
    let mut rounds = 0;
    let mut next: Vec<u32> = Vec::new();
    while !frontier.is_empty() {
        next.clear();
        for &v in &frontier {
            for &u in g.neighbors(v) {
                if !infected[u as usize] {
                    on_attempt(v, u);
                    if rng.gen::<f64>() < p_act {
                        infected[u as usize] = true;
                        next.push(u);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        rounds += 1;
        infected_count += next.len();
        std::mem::swap(&mut frontier, &mut next);
    }
    CascadeResult {
        infected_count,
        infected_scale: infected_count as f64 / n as f64,
        rounds,
        replicate_seed,
    }
}

/// Aggregated Monte Carlo outcome.
#[derive(Debug, Clone)]
pub struct IcSummary {
    pub mean: f64,
    pub std: f64,
    pub replicates: Vec<CascadeResult>,
}

/// Run `replicates` cascades; replicate `r` uses `derive_seed(master_seed, r)`.
/// The mean and sample standard deviation of the infected scale are reduced
/// in replicate order for bit-stable results under any thread count.
pub fn ic_monte_carlo(
    g: &Graph,
    s: &SeedSet,
    p_act: f64,
    replicates: usize,
    master_seed: u64,
) -> Result<IcSummary> {
    if replicates == 0 {
        return Err(Error::Parameter("replicates must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p_act) {
        return Err(Error::Parameter(format!(
            "activation probability must lie in [0, 1], got {p_act}"
        )));
    }
    let results: Vec<CascadeResult> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| ic_single_run(g, s, p_act, derive_seed(master_seed, r)))
        .collect();
    let mean = results.iter().map(|r| r.infected_scale).sum::<f64>() / replicates as f64;
    let var = if replicates > 1 {
        results
            .iter()
            .map(|r| (r.infected_scale - mean).powi(2))
            .sum::<f64>()
            / (replicates as f64 - 1.0)
    } else {
        0.0
    };
    Ok(IcSummary {
        mean,
        std: var.sqrt(),
        replicates: results,
    })
}

/// Live-edge coupled cascade: each directed edge `(u, v)` is live with
/// probability `p_act`, decided by a hash of `(master, u, v)` alone, and the
/// infected set is everything reachable from the seeds over live edges.
///
/// Equal in distribution to [`ic_single_run`], and because edge outcomes
/// ignore traversal order, seed sets sharing a `coupling_seed` are monotone:
/// `S ⊆ S'` infects a superset under `S'`.
pub fn live_edge_infected(g: &Graph, seeds: &[u32], p_act: f64, coupling_seed: u64) -> Vec<bool> {
    let mut infected = vec![false; g.n()];
    let mut stack: Vec<u32> = Vec::new();
    for &v in seeds {
        if !infected[v as usize] {
            infected[v as usize] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !infected[u as usize]
                && hash_unit(coupling_seed, u64::from(v), u64::from(u)) < p_act
            {
                infected[u as usize] = true;
                stack.push(u);
            }
        }
    }
    infected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_ba;

    fn path3() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2)])
    }

    fn seed_set(nodes: &[u32], n: usize) -> SeedSet {
        SeedSet::from_nodes(Method::Degree, nodes.len() as f64 / n as f64, nodes.to_vec())
    }

    #[test]
    fn select_seeds_counts() {
        let table = ScoreTable::new(Method::Degree, (0..1000).map(|i| i as f64).collect());
        let s = select_seeds(&table, 0.03, 1000).unwrap();
        assert_eq!(s.len(), 30);

        let table = ScoreTable::new(Method::Degree, (0..100).map(|i| i as f64).collect());
        let s = select_seeds(&table, 0.0005, 100).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.seeds(), &[99]);
    }

    #[test]
    fn select_seeds_breaks_ties_toward_lower_index() {
        let table = ScoreTable::new(Method::Degree, vec![5.0, 5.0, 5.0, 1.0]);
        let s = select_seeds(&table, 0.5, 4).unwrap();
        assert_eq!(s.seeds(), &[0, 1]);
    }

    #[test]
    fn select_seeds_rejects_bad_fraction() {
        let table = ScoreTable::new(Method::Degree, vec![1.0, 2.0]);
        assert!(select_seeds(&table, 0.0, 2).is_err());
        assert!(select_seeds(&table, 1.5, 2).is_err());
        assert!(select_seeds(&table, -0.1, 2).is_err());
    }

    #[test]
    fn zero_probability_infects_only_seeds() {
        let g = path3();
        let s = seed_set(&[1], 3);
        for seed in 0..20 {
            let r = ic_single_run(&g, &s, 0.0, seed);
            assert_eq!(r.infected_count, 1);
            assert_eq!(r.rounds, 0);
        }
    }

    #[test]
    fn unit_probability_floods_reachable_components() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (3, 4)]);
        let s = seed_set(&[0], 5);
        let r = ic_single_run(&g, &s, 1.0, 9);
        assert_eq!(r.infected_count, 3);
        let s2 = seed_set(&[0, 3], 5);
        let r2 = ic_single_run(&g, &s2, 1.0, 9);
        assert_eq!(r2.infected_count, 5);
    }

    #[test]
    fn path3_middle_seed_expectation() {
        // Two independent coin flips: E[infected] = 1 + 2·p.
        let g = path3();
        let s = seed_set(&[1], 3);
        let summary = ic_monte_carlo(&g, &s, 0.5, 40_000, 77).unwrap();
        let mean_count = summary.mean * 3.0;
        let se = summary.std * 3.0 / (40_000f64).sqrt();
        assert!(
            (mean_count - 2.0).abs() < 3.0 * se,
            "mean {mean_count}, se {se}"
        );
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let g = generate_ba(200, 3, 4).unwrap();
        let s = seed_set(&[0, 5, 9], 200);
        let a = ic_monte_carlo(&g, &s, 0.1, 200, 123).unwrap();
        let b = ic_monte_carlo(&g, &s, 0.1, 200, 123).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std.to_bits(), b.std.to_bits());
    }

    #[test]
    fn higher_probability_spreads_further() {
        let g = generate_ba(500, 3, 15).unwrap();
        let s = seed_set(&[0, 1, 2, 3, 4], 500);
        let low = ic_monte_carlo(&g, &s, 0.1, 400, 5).unwrap();
        let high = ic_monte_carlo(&g, &s, 0.25, 400, 5).unwrap();
        let se = (low.std.powi(2) / 400.0 + high.std.powi(2) / 400.0).sqrt();
        assert!(high.mean - low.mean > 3.0 * se);
    }

    #[test]
    fn infected_set_bounds() {
        let g = generate_ba(100, 2, 3).unwrap();
        let s = seed_set(&[7, 20], 100);
        for r in 0..50u64 {
            let result = ic_single_run(&g, &s, 0.3, r);
            assert!(result.infected_count >= s.len());
            assert!(result.infected_count <= g.n());
            assert!(result.infected_scale > 0.0 && result.infected_scale <= 1.0);
        }
    }

    #[test]
    fn each_neighbor_attempted_at_most_once() {
        use std::collections::HashMap;
        let g = generate_ba(80, 3, 6).unwrap();
        let s = seed_set(&[0, 1], 80);
        for seed in 0..20u64 {
            let mut attempts: HashMap<(u32, u32), usize> = HashMap::new();
            run_cascade(&g, &s, 0.4, seed, &mut |u, v| {
                *attempts.entry((u, v)).or_insert(0) += 1;
            });
            for (&(u, v), &count) in &attempts {
                assert_eq!(count, 1, "edge {u}->{v} attempted {count} times");
            }
        }
    }

    #[test]
    fn live_edge_coupling_is_monotone_in_seeds() {
        let g = generate_ba(300, 3, 8).unwrap();
        for seed in 0..30u64 {
            let small = live_edge_infected(&g, &[3, 50], 0.1, seed);
            let large = live_edge_infected(&g, &[3, 50, 90, 200], 0.1, seed);
            for v in 0..g.n() {
                assert!(!small[v] || large[v], "monotonicity broken at {v}");
            }
        }
    }

    #[test]
    fn live_edge_matches_sequential_ic_in_expectation() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]);
        let s = seed_set(&[0], 4);
        let replicates = 60_000u64;
        let mc = ic_monte_carlo(&g, &s, 0.3, replicates as usize, 42).unwrap();
        let mut total = 0usize;
        for r in 0..replicates {
            total += live_edge_infected(&g, s.seeds(), 0.3, derive_seed(99, r))
                .iter()
                .filter(|&&b| b)
                .count();
        }
        let live_mean = total as f64 / replicates as f64 / g.n() as f64;
        let se = mc.std / (replicates as f64).sqrt();
        assert!(
            (live_mean - mc.mean).abs() < 4.0 * se + 1e-3,
            "{live_mean} vs {mc:?}"
        );
    }
}
