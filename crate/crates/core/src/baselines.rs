//! The comparison centralities: ENC, GLR, DCL, LID, DIL, BC, CC, plus the
//! degree support measure. Each produces a [`ScoreTable`] under the same
//! contract as the CKS ranking.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::community::CommunityPartition;
use crate::graph::{bfs_distances, Graph};
use crate::kshell::kshell_decomposition;
use crate::score::{Method, ScoreTable};

/// score(v) = degree(v).
pub fn degree_centrality(g: &Graph) -> ScoreTable {
    let scores = (0..g.n() as u32).map(|v| g.degree(v) as f64).collect();
    ScoreTable::new(Method::Degree, scores)
}

/// Exact unweighted betweenness (Brandes accumulation from every source),
/// reported as unordered-pair counts: the dependency total is halved so each
/// `{s, t}` pair contributes once.
///
/// Sources are processed in fixed-size chunks that are summed in chunk order,
/// so results are bit-stable under any thread count.
pub fn betweenness_centrality(g: &Graph) -> ScoreTable {
    let n = g.n();
    const CHUNK: usize = 64;
    let chunk_count = n.div_ceil(CHUNK);
    let partials: Vec<Vec<f64>> = (0..chunk_count)
        .into_par_iter()
        .map(|ci| {
            let mut partial = vec![0.0; n];
            for s in (ci * CHUNK)..((ci + 1) * CHUNK).min(n) {
                brandes_pass(g, s as u32, &mut partial);
            }
            partial
        })
        .collect();
    let mut centrality = vec![0.0; n];
    for partial in partials {
        for (slot, x) in centrality.iter_mut().zip(partial) {
            *slot += x;
        }
    }
    for x in &mut centrality {
        *x *= 0.5;
    }
    ScoreTable::new(Method::Bc, centrality)
}

fn brandes_pass(g: &Graph, source: u32, accumulator: &mut [f64]) {
    let n = g.n();
    let mut stack: Vec<u32> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    sigma[source as usize] = 1.0;
    dist[source as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in g.neighbors(v) {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[v as usize] + 1 {
                sigma[w as usize] += sigma[v as usize];
                preds[w as usize].push(v);
            }
        }
    }
    while let Some(w) = stack.pop() {
        for &v in &preds[w as usize] {
            delta[v as usize] +=
                (sigma[v as usize] / sigma[w as usize]) * (1.0 + delta[w as usize]);
        }
        if w != source {
            accumulator[w as usize] += delta[w as usize];
        }
    }
}

/// Component-scoped closeness with size correction:
/// `CC(v) = ((r−1)/(n−1)) · ((r−1)/Σ d(v,u))` over the `r` nodes reachable
/// from `v` (including `v`). Isolated nodes score 0.
pub fn closeness_centrality(g: &Graph) -> ScoreTable {
    let n = g.n();
    let scores: Vec<f64> = (0..n as u32)
        .into_par_iter()
        .map(|v| {
            if n <= 1 {
                return 0.0;
            }
            let dist = bfs_distances(g, v);
            let mut reachable = 0u64;
            let mut total = 0u64;
            for d in dist.into_iter().flatten() {
                reachable += 1;
                total += u64::from(d);
            }
            if reachable <= 1 {
                return 0.0;
            }
            let r = reachable as f64;
            ((r - 1.0) / (n as f64 - 1.0)) * ((r - 1.0) / total as f64)
        })
        .collect();
    ScoreTable::new(Method::Cc, scores)
}

/// Extended neighborhood coreness: with global K-shells,
/// `C_nc(v) = Σ_{u∈N(v)} shell(u)` and `ENC(v) = Σ_{u∈N(v)} C_nc(u)`.
pub fn enc(g: &Graph) -> ScoreTable {
    let shells = kshell_decomposition(g);
    let cnc: Vec<u64> = (0..g.n() as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| u64::from(shells.shell(u)))
                .sum()
        })
        .collect();
    let scores: Vec<f64> = (0..g.n() as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| cnc[u as usize] as f64)
                .sum()
        })
        .collect();
    ScoreTable::new(Method::Enc, scores)
}

/// Degree and importance of lines.
///
/// Each edge `e = {u, v}` carries importance `I(e) = U/λ` with
/// `U = (k_u − p − 1)(k_v − p − 1)`, `p` the number of triangles through `e`,
/// and `λ = p/2 + 1`. The edge contributes
/// `W(e → u) = I(e) · (k_u − 1)/(k_u + k_v − 2)` to `u`, and
/// `DIL(u) = k_u + Σ_{e ∋ u} W(e → u)`.
pub fn dil(g: &Graph) -> ScoreTable {
    let scores: Vec<f64> = (0..g.n() as u32)
        .into_par_iter()
        .map(|v| {
            let kv = g.degree(v) as f64;
            let mut total = kv;
            for &u in g.neighbors(v) {
                let ku = g.degree(u) as f64;
                if kv + ku == 2.0 {
                    continue;
                }
                let p = g.edge_triangles(v, u) as f64;
                let importance = (kv - p - 1.0) * (ku - p - 1.0) / (p / 2.0 + 1.0);
                total += importance * (kv - 1.0) / (kv + ku - 2.0);
            }
            total
        })
        .collect();
    ScoreTable::new(Method::Dil, scores)
}

/// Degree, clustering coefficient and location: the degree mass of the
/// one-hop neighborhood damped exponentially by the node's own clustering,
/// `DCL(v) = 10^{−C(v)} · Σ_{u∈N(v)} (k_u + 1)`. Low-clustering nodes whose
/// neighborhoods fan out into well-connected regions (bridge locations)
/// score highest.
pub fn dcl(g: &Graph) -> ScoreTable {
    let scores: Vec<f64> = (0..g.n() as u32)
        .into_par_iter()
        .map(|v| {
            let mass: f64 = g
                .neighbors(v)
                .iter()
                .map(|&u| g.degree(u) as f64 + 1.0)
                .sum();
            10.0f64.powf(-g.local_clustering(v)) * mass
        })
        .collect();
    ScoreTable::new(Method::Dcl, scores)
}

/// Local information dimensionality.
///
/// For radii `ℓ = 1..L` with `L = max(2, ⌈ecc(v)/2⌉)`, the information of
/// the ℓ-ball is `I(ℓ) = −q ln q` with `q = |B(v, ℓ)|/n`. The score is the
/// negated least-squares slope of `I(ℓ)` against `ln ℓ`: nodes whose balls
/// saturate fastest (information already decaying) rank first.
pub fn lid(g: &Graph) -> ScoreTable {
    let n = g.n();
    let scores: Vec<f64> = (0..n as u32)
        .into_par_iter()
        .map(|v| {
            let dist = bfs_distances(g, v);
            let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
            if ecc == 0 {
                return 0.0;
            }
            let radius = (ecc as usize).div_ceil(2).max(2);
            let mut ball = vec![0usize; radius + 1];
            for d in dist.into_iter().flatten() {
                let d = d as usize;
                if d <= radius {
                    ball[d] += 1;
                }
            }
            let mut points = Vec::with_capacity(radius);
            let mut within = ball[0];
            for (l, &count) in ball.iter().enumerate().skip(1) {
                within += count;
                let q = within as f64 / n as f64;
                let info = if q >= 1.0 { 0.0 } else { -q * q.ln() };
                points.push(((l as f64).ln(), info));
            }
            -least_squares_slope(&points)
        })
        .collect();
    ScoreTable::new(Method::Lid, scores)
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Gateway local rank over a shared community partition.
///
/// Each community's core set holds its local critical node (the member with
/// the best community-local closeness, lowest index on ties) and its gateway
/// nodes (members with an edge leaving the community). Members are scored by
/// proximity to the core set: `GLR(v) = Σ_{u ∈ core} 1/(1 + d_c(v, u))` with
/// distances inside the community sub-graph; unreachable core nodes
/// contribute nothing.
pub fn glr(g: &Graph, p: &CommunityPartition) -> ScoreTable {
    let mut scores = vec![0.0f64; g.n()];
    for c in 0..p.community_count() as u32 {
        let members = p.members(c);
        let (critical, gateways) = community_core(g, p, c);
        let mut core: Vec<u32> = gateways;
        if !core.contains(&critical) {
            core.push(critical);
        }
        core.sort_unstable();
        for &u in &core {
            let dist = community_bfs(g, p, u);
            for &v in members {
                if let Some(d) = dist[v as usize] {
                    scores[v as usize] += 1.0 / (1.0 + f64::from(d));
                }
            }
        }
    }
    ScoreTable::new(Method::Glr, scores)
}

/// The local critical node and the gateway nodes of community `c`.
fn community_core(g: &Graph, p: &CommunityPartition, c: u32) -> (u32, Vec<u32>) {
    let members = p.members(c);
    let nc = members.len() as f64;
    let mut critical = members[0];
    let mut best = f64::NEG_INFINITY;
    for &v in members {
        let dist = community_bfs(g, p, v);
        let mut reachable = 0u64;
        let mut total = 0u64;
        for &u in members {
            if let Some(d) = dist[u as usize] {
                reachable += 1;
                total += u64::from(d);
            }
        }
        let closeness = if reachable <= 1 || nc <= 1.0 {
            0.0
        } else {
            let r = reachable as f64;
            ((r - 1.0) / (nc - 1.0)) * ((r - 1.0) / total as f64)
        };
        if closeness > best {
            best = closeness;
            critical = v;
        }
    }
    let gateways: Vec<u32> = members
        .iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().any(|&u| p.community_of(u) != c))
        .collect();
    (critical, gateways)
}

/// BFS that never leaves the source's community.
fn community_bfs(g: &Graph, p: &CommunityPartition, source: u32) -> Vec<Option<u32>> {
    let c = p.community_of(source);
    let mut dist = vec![None; g.n()];
    dist[source as usize] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize].expect("queued nodes have distances");
        for &u in g.neighbors(v) {
            if p.community_of(u) == c && dist[u as usize].is_none() {
                dist[u as usize] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_gnp;
    use crate::kshell::kshell_decomposition;

    fn path(n: u32) -> Graph {
        Graph::from_edges(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn clique(n: u32) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(&edges)
    }

    fn star(leaves: u32) -> Graph {
        Graph::from_edges(&(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }

    /// Apply a node permutation: new index perm[v] plays old v's role.
    fn permuted(g: &Graph, perm: &[u32]) -> Graph {
        let labels = (0..g.n()).map(|i| i.to_string()).collect();
        let edges: Vec<(u32, u32)> = g
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_parts("permuted", labels, edges)
    }

    fn assert_relabeling_invariant(f: impl Fn(&Graph) -> ScoreTable) {
        let g = generate_gnp(40, 0.12, 21);
        let perm: Vec<u32> = {
            use rand::seq::SliceRandom;
            let mut p: Vec<u32> = (0..g.n() as u32).collect();
            p.shuffle(&mut crate::rng::seeded_rng(77));
            p
        };
        let h = permuted(&g, &perm);
        let sg = f(&g);
        let sh = f(&h);
        for v in 0..g.n() as u32 {
            let a = sg.score(v);
            let b = sh.score(perm[v as usize]);
            assert!(
                (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                "node {v}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn degree_star_values() {
        let g = star(4);
        let t = degree_centrality(&g);
        assert_eq!(t.score(0), 4.0);
        assert_eq!(t.score(1), 1.0);
    }

    #[test]
    fn degree_matches_adjacency_recount() {
        let g = generate_gnp(100, 0.07, 4);
        let t = degree_centrality(&g);
        for v in 0..g.n() as u32 {
            let recount = (0..g.n() as u32).filter(|&u| g.has_edge(v, u)).count();
            assert_eq!(t.score(v), recount as f64);
        }
    }

    #[test]
    fn betweenness_path_middle() {
        let g = path(3);
        let t = betweenness_centrality(&g);
        assert_eq!(t.score(1), 1.0);
        assert_eq!(t.score(0), 0.0);
        assert_eq!(t.score(2), 0.0);
    }

    #[test]
    fn betweenness_clique_is_zero() {
        let g = clique(5);
        let t = betweenness_centrality(&g);
        assert!(t.scores().iter().all(|&s| s.abs() < 1e-12));
    }

    #[test]
    fn betweenness_long_path_counts_pairs() {
        // On P5, node 2 lies on pairs (0,3) (0,4) (1,3) (1,4) and (0,4)... :
        // interior node i of a path carries (i)(n-1-i) pairs.
        let g = path(5);
        let t = betweenness_centrality(&g);
        assert_eq!(t.score(0), 0.0);
        assert_eq!(t.score(1), 3.0);
        assert_eq!(t.score(2), 4.0);
        assert_eq!(t.score(3), 3.0);
    }

    #[test]
    fn closeness_hand_values() {
        let g = path(3);
        let t = closeness_centrality(&g);
        assert!((t.score(1) - 1.0).abs() < 1e-12);
        assert!((t.score(0) - 2.0 / 3.0).abs() < 1e-12);

        let k = clique(4);
        let tk = closeness_centrality(&k);
        assert!(tk.scores().iter().all(|&s| (s - 1.0).abs() < 1e-12));
    }

    #[test]
    fn closeness_disconnected_pair_of_edges() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)]);
        let t = closeness_centrality(&g);
        for v in 0..4 {
            assert!((t.score(v) - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closeness_isolated_node_is_zero() {
        let g = Graph::from_parts(
            "g",
            (0..3).map(|i| i.to_string()).collect(),
            vec![(0u32, 1u32)],
        );
        assert_eq!(closeness_centrality(&g).score(2), 0.0);
    }

    #[test]
    fn enc_star_and_clique_hand_values() {
        let g = star(3);
        let t = enc(&g);
        assert_eq!(t.score(0), 3.0);
        assert_eq!(t.score(1), 3.0);

        let k = clique(4);
        let tk = enc(&k);
        assert!(tk.scores().iter().all(|&s| s == 27.0));
    }

    #[test]
    fn enc_edgeless_node_is_zero() {
        let g = Graph::from_parts(
            "g",
            (0..3).map(|i| i.to_string()).collect(),
            vec![(0u32, 1u32)],
        );
        assert_eq!(enc(&g).score(2), 0.0);
    }

    #[test]
    fn enc_matches_two_level_oracle() {
        for seed in 0..3u64 {
            let g = generate_gnp(200, 0.03, seed);
            let t = enc(&g);
            let shells = kshell_decomposition(&g);
            for v in 0..g.n() as u32 {
                let mut total = 0u64;
                for &u in g.neighbors(v) {
                    for &w in g.neighbors(u) {
                        total += u64::from(shells.shell(w));
                    }
                }
                assert_eq!(t.score(v), total as f64);
            }
        }
    }

    #[test]
    fn dil_star_prefers_center() {
        let g = star(3);
        let t = dil(&g);
        // No triangles: every edge has U = (k_u-1)(k_v-1) = 0, so DIL = degree.
        assert_eq!(t.score(0), 3.0);
        assert_eq!(t.score(1), 1.0);
    }

    #[test]
    fn dil_path_hand_values() {
        let g = path(5);
        let t = dil(&g);
        assert!((t.score(0) - 1.0).abs() < 1e-12);
        assert!((t.score(1) - 2.5).abs() < 1e-12);
        assert!((t.score(2) - 3.0).abs() < 1e-12);
        assert!((t.score(3) - 2.5).abs() < 1e-12);
        assert!((t.score(4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dil_clique_is_symmetric() {
        let t = dil(&clique(4));
        for v in 0..4 {
            assert_eq!(t.score(v), t.score(0));
        }
    }

    #[test]
    fn dcl_hand_values_on_five_node_fixture() {
        // Triangle {0,1,2}, pendant 3 on 2, pendant 4 on 3.
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let t = dcl(&g);
        assert!((t.score(0) - 0.7).abs() < 1e-12);
        assert!((t.score(1) - 0.7).abs() < 1e-12);
        assert!((t.score(2) - 10.0f64.powf(-1.0 / 3.0) * 9.0).abs() < 1e-12);
        assert!((t.score(3) - 6.0).abs() < 1e-12);
        assert!((t.score(4) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn dcl_clique_is_symmetric() {
        let t = dcl(&clique(5));
        for v in 0..5 {
            assert_eq!(t.score(v), t.score(0));
        }
    }

    #[test]
    fn lid_path_hand_values() {
        let g = path(5);
        let t = lid(&g);
        // Node 2: ecc 2, radius 2, balls 3/5 then 5/5.
        let i1 = -(0.6f64) * 0.6f64.ln();
        let expected_mid = i1 / 2.0f64.ln();
        assert!((t.score(2) - expected_mid).abs() < 1e-12);
        // Node 1: ecc 3, radius 2, balls 3/5 then 4/5.
        let i2 = -(0.8f64) * 0.8f64.ln();
        let expected_one = (i1 - i2) / 2.0f64.ln();
        assert!((t.score(1) - expected_one).abs() < 1e-12);
        // Symmetry and ordering.
        assert_eq!(t.score(1), t.score(3));
        assert_eq!(t.score(0), t.score(4));
        assert!(t.score(2) > t.score(1));
        assert!(t.score(1) > t.score(0));
    }

    #[test]
    fn lid_clique_is_symmetric() {
        let t = lid(&clique(6));
        for v in 0..6 {
            assert_eq!(t.score(v), t.score(0));
        }
    }

    #[test]
    fn glr_identifies_bridge_gateways() {
        let g = crate::community::tests::two_cliques_bridge();
        let p = CommunityPartition::from_assignment(&[0, 0, 0, 0, 1, 1, 1, 1]);
        let (critical0, gateways0) = community_core(&g, &p, 0);
        let (critical1, gateways1) = community_core(&g, &p, 1);
        // Clique members tie on closeness; the lowest index wins.
        assert_eq!(critical0, 0);
        assert_eq!(critical1, 4);
        assert_eq!(gateways0, vec![3]);
        assert_eq!(gateways1, vec![4]);

        let t = glr(&g, &p);
        // Core members score highest inside their community.
        assert!(t.score(3) > t.score(1));
        assert!(t.score(0) > t.score(1));
    }

    #[test]
    fn glr_single_community_ranks_by_proximity_to_critical() {
        let g = path(5);
        let p = CommunityPartition::from_assignment(&[0; 5]);
        let t = glr(&g, &p);
        // Critical node is the path center (best local closeness); no
        // gateways exist, so scores decay with distance from it.
        assert_eq!(t.rank_order()[0], 2);
        assert!((t.score(2) - 1.0).abs() < 1e-12);
        assert!((t.score(1) - 0.5).abs() < 1e-12);
        assert!((t.score(0) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn baselines_are_relabeling_invariant() {
        assert_relabeling_invariant(betweenness_centrality);
        assert_relabeling_invariant(closeness_centrality);
        assert_relabeling_invariant(enc);
        assert_relabeling_invariant(dil);
        assert_relabeling_invariant(dcl);
        assert_relabeling_invariant(lid);
    }

    #[test]
    fn glr_is_relabeling_invariant_given_matching_partition() {
        // Critical-node ties break by index, so compare score distributions.
        use rand::seq::SliceRandom;
        let g = generate_gnp(40, 0.12, 22);
        let p = crate::community::louvain(&g, 1);
        let mut perm: Vec<u32> = (0..g.n() as u32).collect();
        perm.shuffle(&mut crate::rng::seeded_rng(8));
        let h = permuted(&g, &perm);
        let mut assignment = vec![0u32; g.n()];
        for v in 0..g.n() as u32 {
            assignment[perm[v as usize] as usize] = p.community_of(v);
        }
        let q = CommunityPartition::from_assignment(&assignment);
        let mut sg = glr(&g, &p).scores().to_vec();
        let mut sh = glr(&h, &q).scores().to_vec();
        sg.sort_by(f64::total_cmp);
        sh.sort_by(f64::total_cmp);
        for (a, b) in sg.iter().zip(&sh) {
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn betweenness_deterministic_across_runs() {
        let g = generate_gnp(150, 0.05, 2);
        let a = betweenness_centrality(&g);
        let b = betweenness_centrality(&g);
        assert_eq!(a.scores(), b.scores());
    }
}
