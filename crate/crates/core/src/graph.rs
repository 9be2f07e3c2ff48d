//! Undirected simple graph over dense node indices, edge-list ingestion,
//! synthetic generators, and shortest-path primitives.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, Write};

use rand::Rng;

use crate::community::CommunityPartition;
use crate::error::{Error, Result};
use crate::rng::seeded_rng;

/// Immutable undirected simple graph.
///
/// Nodes carry opaque external labels; all computation runs on dense indices
/// in `[0, n)`. Adjacency lists are sorted, free of self-loops and duplicates,
/// and symmetric: `u ∈ N(v) ⇔ v ∈ N(u)`.
#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<u32>>,
    labels: Vec<String>,
    label_index: HashMap<String, u32>,
    edge_count: usize,
}

impl Graph {
    /// Build from index pairs with stringified labels. Self-loops and
    /// duplicate edges are dropped; `n` is inferred as `max index + 1`.
    pub fn from_edges(edges: &[(u32, u32)]) -> Graph {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0);
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_parts("graph", labels, edges.iter().copied())
    }

    /// Build from explicit labels and index pairs. Indices must be `< labels.len()`.
    pub fn from_parts(
        name: impl Into<String>,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Graph {
        let n = labels.len();
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge index out of range");
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
                edge_count += 1;
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        Graph {
            name: name.into(),
            adjacency,
            labels,
            label_index,
            edge_count,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.label_index.get(label).copied()
    }

    /// Iterate each undirected edge once, as `(u, v)` with `u < v`,
    /// ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Local clustering coefficient of `v`: fraction of neighbor pairs that
    /// are themselves linked. Nodes of degree < 2 score 0.
    pub fn local_clustering(&self, v: u32) -> f64 {
        let nbrs = self.neighbors(v);
        let k = nbrs.len();
        if k < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    links += 1;
                }
            }
        }
        2.0 * links as f64 / (k * (k - 1)) as f64
    }

    /// Number of triangles containing the edge `{u, v}` (common neighbors).
    pub fn edge_triangles(&self, u: u32, v: u32) -> usize {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a)
            .iter()
            .filter(|&&w| w != b && self.has_edge(w, b))
            .count()
    }

    /// Serialize as the edge-list interchange format understood by
    /// [`parse_edge_list`]. Isolated nodes are not representable.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# {} n={} m={}", self.name, self.n(), self.m())?;
        for (u, v) in self.edges() {
            writeln!(w, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }
}

/// Parse a whitespace-separated edge list.
///
/// One edge per line as two labels; lines starting with `#` or `%` are
/// comments and blank lines are ignored. Directed inputs are symmetrized
/// (`u→v` yields the undirected edge `{u, v}`), so the `directed_input`
/// flag documents intent without changing the resulting topology. Labels
/// receive dense indices in first-appearance order; duplicate edges and
/// self-loops are dropped.
pub fn parse_edge_list<R: BufRead>(reader: R, _directed_input: bool) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    let intern = |token: &str, labels: &mut Vec<String>, index: &mut HashMap<String, u32>| {
        if let Some(&i) = index.get(token) {
            i
        } else {
            let i = labels.len() as u32;
            labels.push(token.to_string());
            index.insert(token.to_string(), i);
            i
        }
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<edge list>", e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0], &mut labels, &mut index);
        let v = intern(tokens[1], &mut labels, &mut index);
        edges.push((u, v));
    }

    if labels.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "empty input: no edges found".into(),
        });
    }

    Ok(Graph::from_parts("edge_list", labels, edges))
}

/// Parse an edge-list file from disk; the graph is named after the file stem.
pub fn load_edge_list(path: &std::path::Path, directed_input: bool) -> Result<Graph> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut g = parse_edge_list(std::io::BufReader::new(file), directed_input)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "edge_list".into());
    g.set_name(name);
    Ok(g)
}

/// Barabási–Albert preferential attachment.
///
/// Growth starts from a star on `m_attach + 1` nodes; each subsequent node
/// attaches `m_attach` edges to distinct existing nodes, chosen with
/// probability proportional to degree. Deterministic for a fixed seed.
pub fn generate_ba(n: usize, m_attach: usize, seed: u64) -> Result<Graph> {
    let mut g = grow_preferential(n, m_attach, 0.0, seed)?;
    g.set_name(format!("ba_n{}_m{}_s{}", n, m_attach, seed));
    Ok(g)
}

/// Holme–Kim power-law cluster growth.
///
/// Like [`generate_ba`], but after each attachment the next edge closes a
/// triangle with probability `p_tri` by linking to a random neighbor of the
/// just-linked target (falling back to preferential attachment when no
/// candidate exists). `p_tri = 0` reproduces [`generate_ba`] bit for bit.
pub fn generate_powerlaw_cluster(n: usize, m_attach: usize, p_tri: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p_tri) {
        return Err(Error::Parameter(format!(
            "p_tri must lie in [0, 1], got {p_tri}"
        )));
    }
    let mut g = grow_preferential(n, m_attach, p_tri, seed)?;
    g.set_name(format!("pcg_n{}_m{}_p{}_s{}", n, m_attach, p_tri, seed));
    Ok(g)
}

fn grow_preferential(n: usize, m_attach: usize, p_tri: f64, seed: u64) -> Result<Graph> {
    if m_attach < 1 || m_attach >= n {
        return Err(Error::Parameter(format!(
            "need 1 <= m_attach < n, got m_attach={m_attach}, n={n}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edge_set: HashSet<(u32, u32)> = HashSet::new();
    // One entry per endpoint per edge, so sampling this list is sampling by degree.
    let mut repeated: Vec<u32> = Vec::with_capacity(2 * m_attach * n);

    let add_edge = |u: u32,
                        v: u32,
                        adjacency: &mut Vec<Vec<u32>>,
                        edge_set: &mut HashSet<(u32, u32)>|
     -> bool {
        let key = (u.min(v), u.max(v));
        if u != v && edge_set.insert(key) {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            true
        } else {
            false
        }
    };

    // Seed star: node 0 linked to 1..=m_attach.
    for leaf in 1..=m_attach as u32 {
        add_edge(0, leaf, &mut adjacency, &mut edge_set);
        repeated.push(0);
        repeated.push(leaf);
    }

    for source in (m_attach + 1)..n {
        let source = source as u32;
        // Distinct preferential targets, drawn up front.
        let mut targets: Vec<u32> = Vec::with_capacity(m_attach);
        while targets.len() < m_attach {
            let t = repeated[rng.gen_range(0..repeated.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        let mut target = targets.pop().expect("m_attach >= 1");
        add_edge(source, target, &mut adjacency, &mut edge_set);
        repeated.push(target);
        let mut count = 1;
        while count < m_attach {
            if p_tri > 0.0 && rng.gen::<f64>() < p_tri {
                let candidates: Vec<u32> = adjacency[target as usize]
                    .iter()
                    .copied()
                    .filter(|&w| {
                        w != source && !edge_set.contains(&(w.min(source), w.max(source)))
                    })
                    .collect();
                if !candidates.is_empty() {
                    let w = candidates[rng.gen_range(0..candidates.len())];
                    add_edge(source, w, &mut adjacency, &mut edge_set);
                    repeated.push(w);
                    count += 1;
                    continue;
                }
            }
            // A triangle step may already have linked this pre-drawn target;
            // the duplicate is dropped and the step still counts.
            target = targets.pop().expect("targets drawn up front");
            add_edge(source, target, &mut adjacency, &mut edge_set);
            repeated.push(target);
            count += 1;
        }
        repeated.extend(std::iter::repeat_n(source, m_attach));
    }

    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(Graph::from_parts(
        "generated",
        labels,
        edge_set.iter().copied(),
    ))
}

/// Erdős–Rényi G(n, p) graph; a plain randomness source for oracle tests and
/// benchmarks rather than an experiment subject.
pub fn generate_gnp(n: usize, p_edge: f64, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.gen::<f64>() < p_edge {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Graph::from_parts(format!("gnp_n{n}_s{seed}"), labels, edges)
}

/// Exact unweighted hop distances from `source`; `None` marks unreachable
/// nodes so averages can never silently absorb them.
pub fn bfs_distances(g: &Graph, source: u32) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[source as usize] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize].expect("queued nodes have distances");
        for &u in g.neighbors(v) {
            if dist[u as usize].is_none() {
                dist[u as usize] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Dataset-level counts as reported per dataset: nodes, edges, and (when a
/// partition is supplied) community count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub communities: Option<usize>,
    pub source_name: String,
}

pub fn graph_summary(g: &Graph, partition: Option<&CommunityPartition>) -> GraphSummary {
    GraphSummary {
        nodes: g.n(),
        edges: g.m(),
        communities: partition.map(|p| p.community_count()),
        source_name: g.name().to_string(),
    }
}
