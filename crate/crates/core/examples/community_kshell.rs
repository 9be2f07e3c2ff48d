//! Community detection and per-community K-shell peeling on a small graph
//! whose structure is easy to read: two 4-cliques joined by a bridge, each
//! clique trailing a pendant chain.
//!
//! Run with: `cargo run --release -p cks --example community_kshell`

use cks::{community_kshell, isolate_communities, louvain, modularity, Graph};

fn main() {
    let mut edges = Vec::new();
    for base in [0u32, 4] {
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((base + i, base + j));
            }
        }
    }
    edges.push((3, 4)); // bridge
    edges.push((0, 8)); // pendant chain on the first clique
    edges.push((8, 9));
    edges.push((7, 10)); // pendant on the second clique
    let g = Graph::from_edges(&edges);
    println!("graph: {} nodes, {} edges", g.n(), g.m());

    let partition = louvain(&g, 42);
    println!(
        "louvain found {} communities, modularity {:.4}",
        partition.community_count(),
        modularity(&g, &partition).expect("graph has edges")
    );
    for c in 0..partition.community_count() as u32 {
        println!("  community {c}: members {:?}", partition.members(c));
    }

    let isolated = isolate_communities(&g, &partition);
    println!(
        "isolation dropped {} inter-community edges ({} -> {})",
        g.m() - isolated.m(),
        g.m(),
        isolated.m()
    );

    let cksa = community_kshell(&g, &partition);
    for c in 0..partition.community_count() as u32 {
        println!("  community {c} shells: {:?}", cksa.shells_of(c));
        for &v in partition.members(c) {
            println!("    node {v}: community k-shell {}", cksa.cks(v));
        }
    }
}
