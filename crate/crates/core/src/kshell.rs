//! Global K-shell decomposition and per-community K-shells.
//!
//! Peeling runs in O(n + m) with a bucketed residual-degree queue. Shell
//! values start at 1: nodes with no surviving neighbors (including nodes
//! isolated by community isolation) take the minimum shell rather than 0,
//! so downstream entropy weights never annihilate a term.

use crate::community::CommunityPartition;
use crate::graph::Graph;

/// Per-node K-shell values of one peeling pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellAssignment {
    shell: Vec<u32>,
    max_shell: u32,
}

impl ShellAssignment {
    pub fn shell(&self, v: u32) -> u32 {
        self.shell[v as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.shell
    }

    pub fn max_shell(&self) -> u32 {
        self.max_shell
    }
}

/// Per-node community K-shell values (each community peeled in isolation)
/// plus the distinct shell set of every community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityShellAssignment {
    cks: Vec<u32>,
    shells_per_community: Vec<Vec<u32>>,
}

impl CommunityShellAssignment {
    pub fn cks(&self, v: u32) -> u32 {
        self.cks[v as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.cks
    }

    /// Sorted distinct k-values present in community `c`.
    pub fn shells_of(&self, c: u32) -> &[u32] {
        &self.shells_per_community[c as usize]
    }
}

/// Iterative peeling: at stage k, repeatedly remove every node of residual
/// degree ≤ k and assign it shell k; stages grow until the graph is empty.
pub fn kshell_decomposition(g: &Graph) -> ShellAssignment {
    let n = g.n();
    if n == 0 {
        return ShellAssignment {
            shell: Vec::new(),
            max_shell: 0,
        };
    }
    let mut core: Vec<usize> = (0..n).map(|v| g.degree(v as u32)).collect();
    let max_deg = *core.iter().max().expect("n > 0");

    // Bucket order: vert holds nodes sorted by residual degree, pos the
    // position of each node, bin the start of each degree bucket.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &core {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    for v in 0..n {
        let d = core[v];
        pos[v] = bin[d];
        vert[pos[v]] = v as u32;
        bin[d] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i] as usize;
        for &u in g.neighbors(v as u32) {
            let u = u as usize;
            if core[u] > core[v] {
                let du = core[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw] as usize;
                if u != w {
                    pos[u] = pw;
                    pos[w] = pu;
                    vert[pu] = w as u32;
                    vert[pw] = u as u32;
                }
                bin[du] += 1;
                core[u] -= 1;
            }
        }
    }

    let shell: Vec<u32> = core.iter().map(|&c| c.max(1) as u32).collect();
    let max_shell = *shell.iter().max().expect("n > 0");
    ShellAssignment { shell, max_shell }
}

/// Drop every inter-community edge, leaving each community as its own
/// disconnected sub-graph over the unchanged node set.
pub fn isolate_communities(g: &Graph, p: &CommunityPartition) -> Graph {
    let labels = (0..g.n() as u32).map(|v| g.label(v).to_string()).collect();
    let intra = g
        .edges()
        .filter(|&(u, v)| p.community_of(u) == p.community_of(v));
    Graph::from_parts(format!("{}_isolated", g.name()), labels, intra)
}

/// Community K-shell: peel the isolated community graph, then collect each
/// community's distinct shell set. Equals [`kshell_decomposition`] applied
/// to [`isolate_communities`] bit for bit.
pub fn community_kshell(g: &Graph, p: &CommunityPartition) -> CommunityShellAssignment {
    let isolated = isolate_communities(g, p);
    let peeled = kshell_decomposition(&isolated);
    let mut shells_per_community: Vec<Vec<u32>> = vec![Vec::new(); p.community_count()];
    for c in 0..p.community_count() as u32 {
        let mut shells: Vec<u32> = p
            .members(c)
            .iter()
            .map(|&v| peeled.shell(v))
            .collect();
        shells.sort_unstable();
        shells.dedup();
        shells_per_community[c as usize] = shells;
    }
    CommunityShellAssignment {
        cks: peeled.values().to_vec(),
        shells_per_community,
    }
}
