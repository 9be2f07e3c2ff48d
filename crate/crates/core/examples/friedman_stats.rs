//! The nonparametric comparison battery on a small result matrix: Friedman
//! average ranks, the Friedman and Iman-Davenport statistics, and Holm
//! adjusted p-values against a control algorithm.
//!
//! Run with: `cargo run --release -p cks --example friedman_stats`

use cks::{friedman_report, ResultMatrix};

fn main() {
    // Mean infected scale per (dataset @ fraction) problem, one column per
    // method; higher is better.
    let problems: Vec<String> = ["net_a@0.02", "net_a@0.05", "net_a@0.1", "net_b@0.02", "net_b@0.05", "net_b@0.1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let algorithms: Vec<String> = ["CKS", "BC", "CC", "ENC"].iter().map(|s| s.to_string()).collect();
    let values = vec![
        vec![0.31, 0.28, 0.26, 0.21],
        vec![0.44, 0.41, 0.38, 0.33],
        vec![0.58, 0.57, 0.52, 0.47],
        vec![0.22, 0.23, 0.19, 0.16],
        vec![0.35, 0.33, 0.31, 0.27],
        vec![0.51, 0.48, 0.47, 0.42],
    ];
    let matrix = ResultMatrix::new(problems, algorithms, values).expect("valid matrix");

    let report = friedman_report(&matrix, "CKS", 0.05).expect("control present");
    println!("average ranks (lower is better):");
    for (alg, rank) in report.algorithms.iter().zip(&report.avg_ranks) {
        println!("  {alg:>4}: {rank:.3}");
    }
    println!("\nFriedman statistic: {:.4}", report.friedman_stat);
    match report.iman_davenport {
        Some(f) => println!("Iman-Davenport:     {f:.4}"),
        None => println!("Iman-Davenport:     singular (perfect ordering)"),
    }
    println!("\ncomparisons against {} (alpha = {}):", report.control, report.alpha);
    for c in &report.comparisons {
        println!(
            "  {:>4}: z = {:+.3}, p = {:.3e}, Holm APV = {:.3e}{}",
            c.algorithm,
            c.z,
            c.p_unadjusted,
            c.holm_apv,
            if c.holm_apv < report.alpha { "  (significant)" } else { "" }
        );
    }
}
