//! A small infected-scale vs spreader-fraction sweep for three methods,
//! printed as the same CSV the `experiment` command writes.
//!
//! Run with: `cargo run --release -p cks --example fraction_sweep`

use cks::experiments::{infected_vs_fraction, write_curves_csv, SMALL_FRACTIONS};
use cks::{generate_ba, Method};

fn main() {
    let g = generate_ba(800, 4, 3).expect("valid parameters");
    let mut curves = Vec::new();
    for method in [Method::Cks, Method::Enc, Method::Bc] {
        let curve = infected_vs_fraction(&g, method, &SMALL_FRACTIONS, 0.1, 200, 17)
            .expect("valid sweep");
        curves.push(curve);
    }
    let mut bytes = Vec::new();
    write_curves_csv(&curves, &mut bytes).expect("in-memory write");
    print!("{}", String::from_utf8(bytes).expect("utf8 csv"));
}
