//! K-Shell Entropy and the Community K-Shell score.
//!
//! A node is scored by how widely and how deeply its edges reach into each
//! connected community: connections are bucketed by the community K-shell of
//! their endpoint, the bucket distribution is scored with a k-value-weighted
//! Shannon entropy (KSE), and per-community terms `NN_c · KSE · η` accumulate
//! into the final score. Bridge nodes with spread-out, core-reaching
//! connections to several large communities score highest.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::community::{louvain, CommunityPartition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kshell::{community_kshell, CommunityShellAssignment};
use crate::score::{Method, ScoreTable};

/// Entropy logarithm base. The worked reference values are consistent with
/// base 10 only.
pub const ENTROPY_LOG_BASE: f64 = 10.0;

/// How one node's edges into one community distribute over that community's
/// K-shells: `eta_per_shell[s]` counts neighbors whose community K-shell is
/// `s`, and `eta_total` is the node's connection count into the community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionProfile {
    node: u32,
    community: u32,
    eta_per_shell: BTreeMap<u32, u32>,
    eta_total: u32,
}

impl ConnectionProfile {
    /// Build from per-shell counts; zero-count buckets are rejected and a
    /// profile with no connections is a contract violation.
    pub fn from_counts(
        node: u32,
        community: u32,
        eta_per_shell: BTreeMap<u32, u32>,
    ) -> Result<ConnectionProfile> {
        if eta_per_shell.values().any(|&c| c == 0) {
            return Err(Error::Contract(
                "connection profile holds a zero-count shell bucket".into(),
            ));
        }
        let eta_total = eta_per_shell.values().sum();
        if eta_total == 0 {
            return Err(Error::Contract(format!(
                "node {node} has no connections into community {community}"
            )));
        }
        Ok(ConnectionProfile {
            node,
            community,
            eta_per_shell,
            eta_total,
        })
    }

    pub fn node(&self) -> u32 {
        self.node
    }

    pub fn community(&self) -> u32 {
        self.community
    }

    pub fn eta_per_shell(&self) -> &BTreeMap<u32, u32> {
        &self.eta_per_shell
    }

    /// η_v: total connections of the node into the community.
    pub fn eta_total(&self) -> u32 {
        self.eta_total
    }
}

/// Count `v`'s neighbors inside community `c`, bucketed by their community
/// K-shell. Errors when no neighbor of `v` lies in `c`.
pub fn connection_profile(
    g: &Graph,
    p: &CommunityPartition,
    cksa: &CommunityShellAssignment,
    v: u32,
    c: u32,
) -> Result<ConnectionProfile> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &u in g.neighbors(v) {
        if p.community_of(u) == c {
            *counts.entry(cksa.cks(u)).or_insert(0) += 1;
        }
    }
    ConnectionProfile::from_counts(v, c, counts)
}

/// K-Shell Entropy of a connection profile:
/// `KSE = −Σ_s K_s · (η_s/η) · log₁₀(η_s/η)`.
///
/// Always ≥ 0, and 0 exactly when every connection falls in a single shell.
pub fn kse(profile: &ConnectionProfile) -> f64 {
    let eta = f64::from(profile.eta_total);
    let mut sum = 0.0;
    for (&shell, &count) in &profile.eta_per_shell {
        let fraction = f64::from(count) / eta;
        sum -= f64::from(shell) * fraction * fraction.log(ENTROPY_LOG_BASE);
    }
    // A single-bucket profile yields -0.0; normalize.
    sum + 0.0
}

/// Community K-Shell score of `v`: over every community holding at least one
/// neighbor of `v` (the node's own community included whenever it has
/// intra-community neighbors), accumulate `NN_c · KSE_{v,c} · η_{v,c}`.
///
/// Nodes without neighbors score 0.
pub fn cks_score(
    g: &Graph,
    p: &CommunityPartition,
    cksa: &CommunityShellAssignment,
    v: u32,
) -> f64 {
    cks_score_variant(g, p, cksa, v, true)
}

/// As [`cks_score`]; `include_own_community = false` restricts the sum to
/// foreign communities (sensitivity-analysis variant).
pub fn cks_score_variant(
    g: &Graph,
    p: &CommunityPartition,
    cksa: &CommunityShellAssignment,
    v: u32,
    include_own_community: bool,
) -> f64 {
    let mut per_community: BTreeMap<u32, BTreeMap<u32, u32>> = BTreeMap::new();
    for &u in g.neighbors(v) {
        *per_community
            .entry(p.community_of(u))
            .or_default()
            .entry(cksa.cks(u))
            .or_insert(0) += 1;
    }
    let own = p.community_of(v);
    let mut total = 0.0;
    for (c, counts) in per_community {
        if !include_own_community && c == own {
            continue;
        }
        let profile = ConnectionProfile::from_counts(v, c, counts)
            .expect("buckets built from existing neighbors");
        total += p.size(c) as f64 * kse(&profile) * f64::from(profile.eta_total());
    }
    total
}

/// The full ranking pipeline: Louvain communities, per-community K-shells,
/// then the CKS score for every node.
pub fn rank_by_cks(g: &Graph, seed: u64) -> ScoreTable {
    rank_by_cks_variant(g, seed, true)
}

pub fn rank_by_cks_variant(g: &Graph, seed: u64, include_own_community: bool) -> ScoreTable {
    let partition = louvain(g, seed);
    let cksa = community_kshell(g, &partition);
    let scores: Vec<f64> = (0..g.n() as u32)
        .into_par_iter()
        .map(|v| cks_score_variant(g, &partition, &cksa, v, include_own_community))
        .collect();
    ScoreTable::new(Method::Cks, scores)
}
