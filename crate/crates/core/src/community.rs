//! Louvain modularity-optimization community detection.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::seeded_rng;

/// Accept a local move only when the modularity gain clears this threshold;
/// guards against floating-point oscillation.
const GAIN_EPSILON: f64 = 1e-7;

/// A disjoint cover of all nodes by communities `[0, C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityPartition {
    assignment: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl CommunityPartition {
    /// Build from a raw per-node community labeling. Labels are renumbered
    /// compactly in order of first appearance by node index.
    pub fn from_assignment(raw: &[u32]) -> CommunityPartition {
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut members: Vec<Vec<u32>> = Vec::new();
        for (v, &label) in raw.iter().enumerate() {
            let next = renumber.len() as u32;
            let c = *renumber.entry(label).or_insert(next);
            if c as usize == members.len() {
                members.push(Vec::new());
            }
            assignment.push(c);
            members[c as usize].push(v as u32);
        }
        CommunityPartition {
            assignment,
            members,
        }
    }

    pub fn singletons(n: usize) -> CommunityPartition {
        CommunityPartition::from_assignment(&(0..n as u32).collect::<Vec<_>>())
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    pub fn community_of(&self, v: u32) -> u32 {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn members(&self, c: u32) -> &[u32] {
        &self.members[c as usize]
    }

    /// NN_c: the number of nodes in community `c`.
    pub fn size(&self, c: u32) -> usize {
        self.members[c as usize].len()
    }
}

/// Weighted multigraph the aggregation levels run on. Self weight holds the
/// degree contribution of internal edges (twice their weight).
struct WorkingGraph {
    adj: Vec<Vec<(u32, f64)>>,
    self_weight: Vec<f64>,
    degree: Vec<f64>,
    total: f64, // == 2m
}

impl WorkingGraph {
    fn from_graph(g: &Graph) -> WorkingGraph {
        let n = g.n();
        let adj: Vec<Vec<(u32, f64)>> = (0..n as u32)
            .map(|v| g.neighbors(v).iter().map(|&u| (u, 1.0)).collect())
            .collect();
        let degree: Vec<f64> = (0..n as u32).map(|v| g.degree(v) as f64).collect();
        let total = degree.iter().sum();
        WorkingGraph {
            adj,
            self_weight: vec![0.0; n],
            degree,
            total,
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }
}

/// One sweep of the local-moving phase until a full pass makes no move.
/// Returns the per-node community labels and whether anything moved.
fn local_moving(wg: &WorkingGraph, order: &[u32]) -> (Vec<u32>, bool) {
    let n = wg.n();
    let mut community: Vec<u32> = (0..n as u32).collect();
    let mut comm_total: Vec<f64> = wg.degree.clone();
    let mut weight_to: Vec<f64> = vec![0.0; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut any_moved = false;

    loop {
        let mut moved_this_pass = false;
        for &v in order {
            let vu = v as usize;
            let own = community[vu];
            touched.clear();
            for &(u, w) in &wg.adj[vu] {
                let c = community[u as usize];
                if weight_to[c as usize] == 0.0 {
                    touched.push(c);
                }
                weight_to[c as usize] += w;
            }
            if !touched.contains(&own) {
                touched.push(own);
            }
            touched.sort_unstable();

            comm_total[own as usize] -= wg.degree[vu];
            // score(c) differs from the modularity delta of joining c by the
            // constant factor 2/total.
            let score = |c: u32, comm_total: &[f64]| {
                weight_to[c as usize] - wg.degree[vu] * comm_total[c as usize] / wg.total
            };
            let own_score = score(own, &comm_total);
            let mut best = own;
            let mut best_score = own_score;
            for &c in &touched {
                if c != own && score(c, &comm_total) > best_score {
                    best = c;
                    best_score = score(c, &comm_total);
                }
            }
            let gain = (best_score - own_score) * 2.0 / wg.total;
            if best != own && gain > GAIN_EPSILON {
                community[vu] = best;
                moved_this_pass = true;
                any_moved = true;
            }
            comm_total[community[vu] as usize] += wg.degree[vu];

            for &c in &touched {
                weight_to[c as usize] = 0.0;
            }
        }
        if !moved_this_pass {
            break;
        }
    }
    (community, any_moved)
}

/// Collapse each community into one node, merging parallel edge weights and
/// folding intra-community weight into self weight.
fn aggregate(wg: &WorkingGraph, community: &[u32], count: usize) -> WorkingGraph {
    let mut maps: Vec<HashMap<u32, f64>> = vec![HashMap::new(); count];
    let mut self_weight = vec![0.0; count];
    for v in 0..wg.n() {
        let a = community[v];
        self_weight[a as usize] += wg.self_weight[v];
        for &(u, w) in &wg.adj[v] {
            let b = community[u as usize];
            if a == b {
                // Both directions of an intra edge land here, totalling 2w.
                self_weight[a as usize] += w;
            } else {
                *maps[a as usize].entry(b).or_insert(0.0) += w;
            }
        }
    }
    let adj: Vec<Vec<(u32, f64)>> = maps
        .into_iter()
        .map(|m| {
            let mut list: Vec<(u32, f64)> = m.into_iter().collect();
            list.sort_unstable_by_key(|&(u, _)| u);
            list
        })
        .collect();
    let degree: Vec<f64> = (0..count)
        .map(|a| self_weight[a] + adj[a].iter().map(|&(_, w)| w).sum::<f64>())
        .collect();
    WorkingGraph {
        adj,
        self_weight,
        degree,
        total: wg.total,
    }
}

/// Louvain community detection: iterate local moving and network
/// aggregation until no move yields a modularity gain.
///
/// Deterministic for a fixed `(graph, seed)`; the node-visit order of each
/// level is the ascending index order shuffled once by the seeded generator.
pub fn louvain(g: &Graph, seed: u64) -> CommunityPartition {
    louvain_levels(g, seed).0
}

/// As [`louvain`], also returning the modularity of the flattened partition
/// at the end of each level (instrumentation for the monotonicity check).
fn louvain_levels(g: &Graph, seed: u64) -> (CommunityPartition, Vec<f64>) {
    let n = g.n();
    if n == 0 || g.m() == 0 {
        return (CommunityPartition::singletons(n), Vec::new());
    }
    let mut rng = seeded_rng(seed);
    let mut membership: Vec<u32> = (0..n as u32).collect();
    let mut wg = WorkingGraph::from_graph(g);
    let mut trace = Vec::new();

    loop {
        let mut order: Vec<u32> = (0..wg.n() as u32).collect();
        order.shuffle(&mut rng);
        let (community, moved) = local_moving(&wg, &order);
        if !moved {
            break;
        }
        // Renumber level communities compactly, by first appearance.
        let level = CommunityPartition::from_assignment(&community);
        for slot in membership.iter_mut() {
            *slot = level.community_of(*slot);
        }
        let flattened = CommunityPartition::from_assignment(&membership);
        trace.push(modularity(g, &flattened).expect("m > 0 checked above"));
        let count = level.community_count();
        if count == wg.n() {
            break;
        }
        wg = aggregate(&wg, level.assignment(), count);
    }
    (CommunityPartition::from_assignment(&membership), trace)
}

/// Newman modularity `Q = Σ_c [ e_c/m − (d_c/2m)² ]`.
pub fn modularity(g: &Graph, p: &CommunityPartition) -> Result<f64> {
    if p.node_count() != g.n() {
        return Err(Error::Contract(format!(
            "partition covers {} nodes, graph has {}",
            p.node_count(),
            g.n()
        )));
    }
    let m = g.m() as f64;
    if g.m() == 0 {
        return Err(Error::Parameter(
            "modularity is undefined for a graph with no edges".into(),
        ));
    }
    let c_count = p.community_count();
    let mut intra = vec![0usize; c_count];
    let mut degree = vec![0usize; c_count];
    for v in 0..g.n() as u32 {
        degree[p.community_of(v) as usize] += g.degree(v);
    }
    for (u, v) in g.edges() {
        if p.community_of(u) == p.community_of(v) {
            intra[p.community_of(u) as usize] += 1;
        }
    }
    let q = (0..c_count)
        .map(|c| intra[c] as f64 / m - (degree[c] as f64 / (2.0 * m)).powi(2))
        .sum();
    Ok(q)
}
