//! Average distance between chosen spreaders: seed sets that spread out over
//! the network overlap less. Compares CKS against degree and ENC picks.
//!
//! Run with: `cargo run --release -p cks --example spreader_distance`

use cks::experiments::{average_spreader_distance, rank_method};
use cks::{generate_ba, select_seeds, Method};

fn main() {
    let g = generate_ba(1000, 5, 9).expect("valid parameters");
    println!("graph: {} nodes, {} edges", g.n(), g.m());
    println!("seed fraction 0.03 ({} seeds)\n", (0.03 * g.n() as f64).round());

    for method in [Method::Cks, Method::Enc, Method::Degree] {
        let table = rank_method(&g, method, 9);
        let seeds = select_seeds(&table, 0.03, g.n()).expect("fraction in range");
        let d = average_spreader_distance(&g, &seeds).expect("enough seeds");
        println!(
            "{:>6}: mean pairwise distance {:.3} ({} unreachable pairs)",
            method.to_string(),
            d.mean,
            d.unreachable_pairs
        );
    }
}
