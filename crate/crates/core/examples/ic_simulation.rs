//! Independent Cascade Monte Carlo: pick seeds with CKS, simulate spread at
//! several activation probabilities, and report the final infected scale.
//!
//! Run with: `cargo run --release -p cks --example ic_simulation`

use cks::{generate_ba, ic_monte_carlo, ic_single_run, rank_by_cks, select_seeds};

fn main() {
    let g = generate_ba(1000, 5, 7).expect("valid parameters");
    let table = rank_by_cks(&g, 7);
    let seeds = select_seeds(&table, 0.03, g.n()).expect("fraction in range");
    println!(
        "{} seeds ({}% of {} nodes), chosen by {}",
        seeds.len(),
        seeds.fraction() * 100.0,
        g.n(),
        seeds.method()
    );

    let single = ic_single_run(&g, &seeds, 0.1, 0);
    println!(
        "one cascade at P=0.1: {} infected in {} rounds",
        single.infected_count, single.rounds
    );

    println!("\nmean final infected scale over 1000 replicates:");
    for p in [0.05, 0.1, 0.15, 0.2, 0.25] {
        let summary = ic_monte_carlo(&g, &seeds, p, 1000, 42).expect("valid parameters");
        println!("  P={p:<5}: {:.4} (std {:.4})", summary.mean, summary.std);
    }
}
