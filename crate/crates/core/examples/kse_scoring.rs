//! K-shell entropy on hand-built connection profiles, then the full CKS
//! score on a toy bridge topology.
//!
//! Three nodes connect to the same community with six edges each, spread
//! differently over its four shells. Wider spread scores higher, and spread
//! toward the core scores higher still.
//!
//! Run with: `cargo run --release -p cks --example kse_scoring`

use std::collections::BTreeMap;

use cks::{community_kshell, kse, rank_by_cks, CommunityPartition, ConnectionProfile, Graph};

fn profile(counts: &[(u32, u32)]) -> ConnectionProfile {
    let buckets: BTreeMap<u32, u32> = counts.iter().copied().collect();
    ConnectionProfile::from_counts(0, 0, buckets).expect("non-empty profile")
}

fn main() {
    println!("entropy of six connections over four community shells:");
    let cases = [
        ("4 edges in shell 1, 2 in shell 2", vec![(1u32, 4u32), (2, 2)]),
        ("2 edges each in shells 1..3", vec![(1, 2), (2, 2), (3, 2)]),
        ("2 edges each in shells 2..4", vec![(2, 2), (3, 2), (4, 2)]),
        ("all 6 edges in shell 3", vec![(3, 6)]),
    ];
    for (label, counts) in cases {
        println!("  {label}: KSE = {:.11}", kse(&profile(&counts)));
    }

    // A node outside a triangle-plus-pendant community, touching both its
    // shells: score = community size x entropy x connection count.
    let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 0), (0, 3), (4, 3), (4, 1)]);
    let partition = CommunityPartition::from_assignment(&[0, 0, 0, 0, 1]);
    let cksa = community_kshell(&g, &partition);
    let score = cks::cks_score(&g, &partition, &cksa, 4);
    println!("\nbridge node score on the pendant fixture: {score:.6}");

    // Full pipeline ranking on three blobs stitched together by node 18.
    let mut edges = Vec::new();
    for b in 0..3u32 {
        let base = b * 6;
        edges.extend([
            (base, base + 1),
            (base + 1, base + 2),
            (base + 2, base),
            (base + 3, base),
            (base + 4, base + 1),
            (base + 5, base + 2),
        ]);
        edges.push((18, base + 3));
        edges.push((18, base));
    }
    let g = Graph::from_edges(&edges);
    let table = rank_by_cks(&g, 42);
    println!("\ntop 5 by CKS score on the three-blob graph:");
    for (rank, &v) in table.rank_order().iter().take(5).enumerate() {
        println!("  #{} node {v}: {:.4}", rank + 1, table.score(v));
    }
}
