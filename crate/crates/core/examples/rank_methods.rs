//! Rank spreaders with every method on one synthetic graph and compare the
//! top picks.
//!
//! Run with: `cargo run --release -p cks --example rank_methods`

use cks::experiments::rank_method;
use cks::{generate_ba, Method};

fn main() {
    let g = generate_ba(500, 3, 11).expect("valid parameters");
    println!("graph: {} ({} nodes, {} edges)\n", g.name(), g.n(), g.m());

    for method in Method::EXPERIMENT_SET {
        let table = rank_method(&g, method, 11);
        let top: Vec<u32> = table.rank_order().iter().take(10).copied().collect();
        println!("{method:>4}: top 10 = {top:?}");
    }

    println!("\nscore details for CKS:");
    let table = rank_method(&g, Method::Cks, 11);
    for (rank, &v) in table.rank_order().iter().take(5).enumerate() {
        println!(
            "  #{} node {} (degree {}): {:.3}",
            rank + 1,
            g.label(v),
            g.degree(v),
            table.score(v)
        );
    }
}
