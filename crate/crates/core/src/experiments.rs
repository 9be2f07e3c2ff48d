//! Evaluation metrics and sweep protocols: infected scale vs spreader
//! fraction, infected scale vs activation probability, average spreader
//! distance, and ranking wall time.

use std::time::Instant;

use crate::baselines::{
    betweenness_centrality, closeness_centrality, dcl, degree_centrality, dil, enc, glr, lid,
};
use crate::cks::rank_by_cks_variant;
use crate::community::louvain;
use crate::diffusion::{ic_monte_carlo, select_seeds, SeedSet};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph};
use crate::rng::derive_seed;
use crate::score::{Method, ScoreTable};

/// Spreader fractions for datasets with fewer than 2000 nodes.
pub const SMALL_FRACTIONS: [f64; 9] = [0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1];

/// Spreader fractions for datasets with 2000 nodes or more.
pub const LARGE_FRACTIONS: [f64; 8] = [0.005, 0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04];

/// Activation probability sweep grid.
pub const DEFAULT_PROBABILITIES: [f64; 9] =
    [0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.225, 0.25];

/// Default activation probability of the fraction sweep.
pub const DEFAULT_ACTIVATION_PROBABILITY: f64 = 0.1;

/// Default spreader fraction of the probability sweep.
pub const DEFAULT_SWEEP_FRACTION: f64 = 0.03;

/// Fraction grid matching the dataset size.
pub fn default_fractions(n: usize) -> &'static [f64] {
    if n < 2000 {
        &SMALL_FRACTIONS
    } else {
        &LARGE_FRACTIONS
    }
}

/// One ranking pass for `method` (the Louvain pass of community-based
/// methods is part of the ranking).
pub fn rank_method(g: &Graph, method: Method, seed: u64) -> ScoreTable {
    rank_method_variant(g, method, seed, true)
}

pub fn rank_method_variant(
    g: &Graph,
    method: Method,
    seed: u64,
    cks_include_own_community: bool,
) -> ScoreTable {
    match method {
        Method::Cks => rank_by_cks_variant(g, seed, cks_include_own_community),
        Method::Enc => enc(g),
        Method::Glr => {
            let partition = louvain(g, seed);
            glr(g, &partition)
        }
        Method::Dcl => dcl(g),
        Method::Lid => lid(g),
        Method::Dil => dil(g),
        Method::Bc => betweenness_centrality(g),
        Method::Cc => closeness_centrality(g),
        Method::Degree => degree_centrality(g),
    }
}

/// What the x axis of a curve sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XAxis {
    SpreaderFraction,
    ActivationProbability,
}

impl XAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            XAxis::SpreaderFraction => "spreader_fraction",
            XAxis::ActivationProbability => "activation_probability",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub mean: f64,
    pub std: f64,
    pub replicates: usize,
}

/// One method's sweep on one dataset: x strictly increasing, every point
/// backed by the configured replicate count.
#[derive(Debug, Clone)]
pub struct ExperimentCurve {
    pub method: Method,
    pub dataset: String,
    pub x_name: XAxis,
    points: Vec<CurvePoint>,
}

impl ExperimentCurve {
    pub fn new(
        method: Method,
        dataset: impl Into<String>,
        x_name: XAxis,
        points: Vec<CurvePoint>,
    ) -> Result<ExperimentCurve> {
        if points.windows(2).any(|w| w[0].x >= w[1].x) {
            return Err(Error::Contract("curve x values must strictly increase".into()));
        }
        if points.iter().any(|p| p.replicates < 1) {
            return Err(Error::Contract("curve point without replicates".into()));
        }
        Ok(ExperimentCurve {
            method,
            dataset: dataset.into(),
            x_name,
            points,
        })
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }
}

fn validated_grid(values: &[f64], lo_exclusive: bool, what: &str) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::Parameter(format!("{what} grid is empty")));
    }
    for &x in values {
        let ok = if lo_exclusive {
            x > 0.0 && x <= 1.0
        } else {
            (0.0..=1.0).contains(&x)
        };
        if !ok {
            return Err(Error::Parameter(format!("{what} value {x} out of range")));
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    Ok(sorted)
}

/// Final infected scale vs spreader fraction: one ranking pass, then
/// `select_seeds` + Monte Carlo per fraction.
pub fn infected_vs_fraction(
    g: &Graph,
    method: Method,
    fractions: &[f64],
    p_act: f64,
    replicates: usize,
    master_seed: u64,
) -> Result<ExperimentCurve> {
    let table = rank_method(g, method, master_seed);
    infected_vs_fraction_with_table(g, &table, fractions, p_act, replicates, master_seed)
}

/// As [`infected_vs_fraction`] with a pre-built ranking (lets a caller reuse
/// one ranking pass across several sweeps).
pub fn infected_vs_fraction_with_table(
    g: &Graph,
    table: &ScoreTable,
    fractions: &[f64],
    p_act: f64,
    replicates: usize,
    master_seed: u64,
) -> Result<ExperimentCurve> {
    let fractions = validated_grid(fractions, true, "spreader fraction")?;
    let mut points = Vec::with_capacity(fractions.len());
    for (i, &fraction) in fractions.iter().enumerate() {
        let seeds = select_seeds(table, fraction, g.n())?;
        let summary =
            ic_monte_carlo(g, &seeds, p_act, replicates, derive_seed(master_seed, i as u64))?;
        points.push(CurvePoint {
            x: fraction,
            mean: summary.mean,
            std: summary.std,
            replicates,
        });
    }
    ExperimentCurve::new(table.method(), g.name(), XAxis::SpreaderFraction, points)
}

/// Final infected scale vs activation probability under a fixed seed set.
pub fn infected_vs_probability(
    g: &Graph,
    method: Method,
    probabilities: &[f64],
    fraction: f64,
    replicates: usize,
    master_seed: u64,
) -> Result<ExperimentCurve> {
    let table = rank_method(g, method, master_seed);
    infected_vs_probability_with_table(g, &table, probabilities, fraction, replicates, master_seed)
}

pub fn infected_vs_probability_with_table(
    g: &Graph,
    table: &ScoreTable,
    probabilities: &[f64],
    fraction: f64,
    replicates: usize,
    master_seed: u64,
) -> Result<ExperimentCurve> {
    let probabilities = validated_grid(probabilities, false, "activation probability")?;
    let seeds = select_seeds(table, fraction, g.n())?;
    let mut points = Vec::with_capacity(probabilities.len());
    for (i, &p_act) in probabilities.iter().enumerate() {
        let summary =
            ic_monte_carlo(g, &seeds, p_act, replicates, derive_seed(master_seed, i as u64))?;
        points.push(CurvePoint {
            x: p_act,
            mean: summary.mean,
            std: summary.std,
            replicates,
        });
    }
    ExperimentCurve::new(table.method(), g.name(), XAxis::ActivationProbability, points)
}

/// Average spreader distance per fraction; a deterministic seed-set property,
/// emitted as a single-replicate curve. Fractions selecting fewer than two
/// seeds are skipped.
pub fn spreader_distance_curve(
    g: &Graph,
    table: &ScoreTable,
    fractions: &[f64],
) -> Result<ExperimentCurve> {
    let fractions = validated_grid(fractions, true, "spreader fraction")?;
    let mut points = Vec::with_capacity(fractions.len());
    for &fraction in &fractions {
        let seeds = select_seeds(table, fraction, g.n())?;
        if seeds.len() < 2 {
            continue;
        }
        let d = average_spreader_distance(g, &seeds)?;
        points.push(CurvePoint {
            x: fraction,
            mean: d.mean,
            std: 0.0,
            replicates: 1,
        });
    }
    ExperimentCurve::new(table.method(), g.name(), XAxis::SpreaderFraction, points)
}

/// Mean pairwise hop distance among seeds, finite pairs only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreaderDistance {
    /// L_s over the pairs with a finite distance (0 when none exists).
    pub mean: f64,
    pub unreachable_pairs: usize,
}

/// Average spreader distance L_s of a seed set with at least two members.
pub fn average_spreader_distance(g: &Graph, s: &SeedSet) -> Result<SpreaderDistance> {
    let seeds = s.seeds();
    if seeds.len() < 2 {
        return Err(Error::Parameter(format!(
            "average spreader distance needs at least 2 seeds, got {}",
            seeds.len()
        )));
    }
    let mut total = 0u64;
    let mut finite_pairs = 0usize;
    let mut unreachable_pairs = 0usize;
    for (i, &a) in seeds.iter().enumerate() {
        let dist = bfs_distances(g, a);
        for &b in &seeds[i + 1..] {
            match dist[b as usize] {
                Some(d) => {
                    total += u64::from(d);
                    finite_pairs += 1;
                }
                None => unreachable_pairs += 1,
            }
        }
    }
    let mean = if finite_pairs > 0 {
        total as f64 / finite_pairs as f64
    } else {
        0.0
    };
    Ok(SpreaderDistance {
        mean,
        unreachable_pairs,
    })
}

/// Wall time of a full ranking pass.
#[derive(Debug, Clone)]
pub struct TimingRecord {
    pub method: Method,
    pub dataset: String,
    pub ranking_wall_time: f64,
    pub environment_note: String,
}

/// Time the ranking pass with a monotonic clock: one discarded warm-up run,
/// then the median of 3 measured runs. Graph loading is outside the window.
pub fn time_ranking(method: Method, g: &Graph, seed: u64) -> TimingRecord {
    let _warmup = rank_method(g, method, seed);
    let mut samples: Vec<f64> = (0..3)
        .map(|_| {
            let start = Instant::now();
            let table = rank_method(g, method, seed);
            let elapsed = start.elapsed().as_secs_f64();
            std::hint::black_box(table.len());
            elapsed
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    TimingRecord {
        method,
        dataset: g.name().to_string(),
        ranking_wall_time: samples[1].max(f64::MIN_POSITIVE),
        environment_note: format!("workers={}", rayon::current_num_threads()),
    }
}

/// Curve CSV rows: `method,dataset,x_name,x,mean,std,replicates`.
pub fn write_curves_csv<W: std::io::Write>(curves: &[ExperimentCurve], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let io_err = |e: csv::Error| Error::io("curve csv", std::io::Error::other(e));
    out.write_record(["method", "dataset", "x_name", "x", "mean", "std", "replicates"])
        .map_err(io_err)?;
    for curve in curves {
        for p in curve.points() {
            out.write_record([
                curve.method.as_str(),
                &curve.dataset,
                curve.x_name.as_str(),
                &format!("{}", p.x),
                &format!("{:.11e}", p.mean),
                &format!("{:.11e}", p.std),
                &p.replicates.to_string(),
            ])
            .map_err(io_err)?;
        }
    }
    out.flush().map_err(|e| Error::io("curve csv", e))?;
    Ok(())
}

/// Timing CSV rows: `method,dataset,seconds`.
pub fn write_timings_csv<W: std::io::Write>(timings: &[TimingRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let io_err = |e: csv::Error| Error::io("timing csv", std::io::Error::other(e));
    out.write_record(["method", "dataset", "seconds"]).map_err(io_err)?;
    for t in timings {
        out.write_record([
            t.method.as_str(),
            &t.dataset,
            &format!("{:.6e}", t.ranking_wall_time),
        ])
        .map_err(io_err)?;
    }
    out.flush().map_err(|e| Error::io("timing csv", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::live_edge_infected;
    use crate::graph::generate_ba;

    fn path5() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)])
    }

    fn seed_set(nodes: &[u32]) -> SeedSet {
        SeedSet::from_nodes(Method::Degree, 0.1, nodes.to_vec())
    }

    #[test]
    fn spreader_distance_single_pair() {
        let g = path5();
        let d = average_spreader_distance(&g, &seed_set(&[0, 4])).unwrap();
        assert_eq!(d.mean, 4.0);
        assert_eq!(d.unreachable_pairs, 0);
    }

    #[test]
    fn spreader_distance_three_seeds() {
        let g = path5();
        let d = average_spreader_distance(&g, &seed_set(&[0, 2, 4])).unwrap();
        assert!((d.mean - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn spreader_distance_across_components() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)]);
        let d = average_spreader_distance(&g, &seed_set(&[0, 1, 2])).unwrap();
        assert_eq!(d.unreachable_pairs, 2);
        assert_eq!(d.mean, 1.0);
    }

    #[test]
    fn spreader_distance_requires_two_seeds() {
        let g = path5();
        assert!(average_spreader_distance(&g, &seed_set(&[1])).is_err());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn spreader_distance_matches_floyd_warshall() {
        let g = generate_ba(120, 3, 31).unwrap();
        let n = g.n();
        // Independent all-pairs oracle.
        let mut dist = vec![vec![u32::MAX; n]; n];
        for v in 0..n {
            dist[v][v] = 0;
        }
        for (u, v) in g.edges() {
            dist[u as usize][v as usize] = 1;
            dist[v as usize][u as usize] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                if dist[i][k] == u32::MAX {
                    continue;
                }
                for j in 0..n {
                    if dist[k][j] != u32::MAX && dist[i][k] + dist[k][j] < dist[i][j] {
                        dist[i][j] = dist[i][k] + dist[k][j];
                    }
                }
            }
        }
        let seeds: Vec<u32> = (0..40).collect();
        let d = average_spreader_distance(&g, &seed_set(&seeds)).unwrap();
        let mut total = 0u64;
        let mut pairs = 0u64;
        for (i, &a) in seeds.iter().enumerate() {
            for &b in &seeds[i + 1..] {
                let x = dist[a as usize][b as usize];
                if x != u32::MAX {
                    total += u64::from(x);
                    pairs += 1;
                }
            }
        }
        assert!((d.mean - total as f64 / pairs as f64).abs() < 1e-12);
    }

    #[test]
    fn default_grids_match_protocol() {
        assert_eq!(default_fractions(1999), &SMALL_FRACTIONS);
        assert_eq!(default_fractions(2000), &LARGE_FRACTIONS);
        assert_eq!(default_fractions(10_876), &LARGE_FRACTIONS);
        assert_eq!(SMALL_FRACTIONS.len(), 9);
        assert_eq!(LARGE_FRACTIONS.len(), 8);
        assert_eq!(DEFAULT_PROBABILITIES.len(), 9);
    }

    #[test]
    fn fraction_curve_shape_and_determinism() {
        let g = generate_ba(300, 3, 2).unwrap();
        let fractions = [0.02, 0.05, 0.1];
        let a = infected_vs_fraction(&g, Method::Degree, &fractions, 0.1, 50, 7).unwrap();
        let b = infected_vs_fraction(&g, Method::Degree, &fractions, 0.1, 50, 7).unwrap();
        assert_eq!(a.points().len(), 3);
        for (pa, pb) in a.points().iter().zip(b.points()) {
            assert_eq!(pa.mean.to_bits(), pb.mean.to_bits());
            assert_eq!(pa.replicates, 50);
        }
        assert!(a.points().windows(2).all(|w| w[0].x < w[1].x));
    }

    #[test]
    fn probability_curve_zero_point_equals_seed_share() {
        let g = generate_ba(200, 3, 3).unwrap();
        let curve =
            infected_vs_probability(&g, Method::Degree, &[0.0, 0.1], 0.03, 30, 11).unwrap();
        let k = (0.03f64 * 200.0 + 0.5).floor().max(1.0);
        assert!((curve.points()[0].mean - k / 200.0).abs() < 1e-12);
        assert!(curve.points()[0].std < 1e-12);
    }

    #[test]
    fn coupled_fraction_sweep_is_monotone() {
        let g = generate_ba(300, 3, 5).unwrap();
        let table = rank_method(&g, Method::Degree, 0);
        let fractions = [0.02, 0.05, 0.1];
        for coupling in 0..40u64 {
            let mut last = 0usize;
            for &f in &fractions {
                let seeds = select_seeds(&table, f, g.n()).unwrap();
                let infected = live_edge_infected(&g, seeds.seeds(), 0.1, coupling)
                    .iter()
                    .filter(|&&b| b)
                    .count();
                assert!(infected >= last);
                last = infected;
            }
        }
    }

    #[test]
    fn curve_rejects_unsorted_x() {
        let points = vec![
            CurvePoint { x: 0.1, mean: 0.0, std: 0.0, replicates: 1 },
            CurvePoint { x: 0.1, mean: 0.0, std: 0.0, replicates: 1 },
        ];
        assert!(ExperimentCurve::new(Method::Cks, "d", XAxis::SpreaderFraction, points).is_err());
    }

    #[test]
    fn timing_is_positive_and_labelled() {
        let g = generate_ba(200, 3, 1).unwrap();
        let t = time_ranking(Method::Enc, &g, 0);
        assert!(t.ranking_wall_time > 0.0);
        assert_eq!(t.method, Method::Enc);
        assert_eq!(t.dataset, g.name());
    }

    #[test]
    fn curve_csv_layout() {
        let points = vec![CurvePoint { x: 0.05, mean: 0.25, std: 0.01, replicates: 100 }];
        let curve = ExperimentCurve::new(Method::Cks, "ba", XAxis::SpreaderFraction, points).unwrap();
        let mut buf = Vec::new();
        write_curves_csv(&[curve], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("method,dataset,x_name,x,mean,std,replicates")
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("CKS,ba,spreader_fraction,0.05,"));
        assert!(row.ends_with(",100"));
    }
}
