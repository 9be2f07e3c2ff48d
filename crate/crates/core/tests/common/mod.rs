//! Independent oracles shared by the integration suites. Everything here
//! recomputes results from first principles and must stay decoupled from the
//! library's production code paths.

// Each test crate pulls in the subset of oracles it needs.
#![allow(dead_code)]

use cks::Graph;

/// Repeated-full-scan peeling: at stage k, sweep until no node of residual
/// degree ≤ k remains.
pub fn naive_peel(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut shell = vec![0u32; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v as u32)).collect();
    let mut remaining = n;
    let mut k = 1u32;
    while remaining > 0 {
        loop {
            let mut any = false;
            for v in 0..n {
                if !removed[v] && deg[v] <= k as usize {
                    removed[v] = true;
                    shell[v] = k;
                    remaining -= 1;
                    any = true;
                    for &u in g.neighbors(v as u32) {
                        if !removed[u as usize] {
                            deg[u as usize] -= 1;
                        }
                    }
                }
            }
            if !any {
                break;
            }
        }
        k += 1;
    }
    shell
}

/// Floyd–Warshall all-pairs distances; `None` marks unreachable pairs.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let mut d = vec![vec![u32::MAX; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == u32::MAX {
                continue;
            }
            for j in 0..n {
                if d[k][j] != u32::MAX && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| if x == u32::MAX { None } else { Some(x) })
                .collect()
        })
        .collect()
}

/// Betweenness by literal enumeration of every shortest path of every pair,
/// counting interior visits. Unordered pairs, unnormalized.
pub fn betweenness_by_path_enumeration(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut score = vec![0.0f64; n];
    for s in 0..n as u32 {
        let dist = cks::bfs_distances(g, s);
        for t in (s + 1)..n as u32 {
            if dist[t as usize].is_none() {
                continue;
            }
            let mut through = vec![0u64; n];
            let mut total = 0u64;
            let mut interior: Vec<u32> = Vec::new();
            enumerate_paths(g, &dist, s, t, &mut interior, &mut through, &mut total);
            for v in 0..n {
                if through[v] > 0 {
                    score[v] += through[v] as f64 / total as f64;
                }
            }
        }
    }
    score
}

/// Walk backwards from `v` toward the source along strictly
/// distance-decreasing edges, emitting every shortest path.
fn enumerate_paths(
    g: &Graph,
    dist: &[Option<u32>],
    s: u32,
    v: u32,
    interior: &mut Vec<u32>,
    through: &mut [u64],
    total: &mut u64,
) {
    if v == s {
        *total += 1;
        for &w in interior.iter() {
            through[w as usize] += 1;
        }
        return;
    }
    let dv = dist[v as usize].expect("only reachable nodes enumerated");
    for &u in g.neighbors(v) {
        if dist[u as usize] == Some(dv - 1) {
            if u != s {
                interior.push(u);
            }
            enumerate_paths(g, dist, s, u, interior, through, total);
            if u != s {
                interior.pop();
            }
        }
    }
}

/// Exact expected infected count of an independent cascade by enumerating
/// every live/blocked outcome of all 2m directed edges.
pub fn exact_ic_expectation(g: &Graph, seeds: &[u32], p: f64) -> f64 {
    let directed: Vec<(u32, u32)> = g
        .edges()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .collect();
    let m2 = directed.len();
    assert!(m2 <= 20, "enumeration fixture too large: {m2} directed edges");
    let mut expectation = 0.0;
    for mask in 0u32..(1 << m2) {
        let live = mask.count_ones() as i32;
        let weight = p.powi(live) * (1.0 - p).powi(m2 as i32 - live);
        if weight == 0.0 {
            continue;
        }
        let mut infected = vec![false; g.n()];
        let mut stack: Vec<u32> = Vec::new();
        for &v in seeds {
            if !infected[v as usize] {
                infected[v as usize] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in directed.iter().enumerate() {
                if a == v && mask & (1 << i) != 0 && !infected[b as usize] {
                    infected[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        expectation += weight * infected.iter().filter(|&&x| x).count() as f64;
    }
    expectation
}
