//! Thin command-line front end; all logic lives in the library's `cli`
//! module.

use std::panic::AssertUnwindSafe;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cks::cli::{cmd_experiment, cmd_generate, cmd_rank, cmd_stats, cmd_summary, ExperimentConfig};
use cks::Error;

#[derive(Parser)]
#[command(
    name = "cks",
    version,
    about = "Community K-Shell spreader ranking, cascade experiments, and comparison statistics"
)]
struct Cli {
    /// Config file (TOML); flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory (or output file for `generate`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Comma-separated method subset (CKS,ENC,GLR,DCL,LID,DIL,BC,CC).
    #[arg(long, global = true, value_delimiter = ',')]
    methods: Option<Vec<String>>,

    /// Monte Carlo replicates per curve point.
    #[arg(long, global = true)]
    replicates: Option<usize>,

    /// Worker threads (0 = automatic).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one score-table CSV per (dataset, method).
    Rank,
    /// Run the full sweep: fig4..fig7 CSVs plus the stats-ready matrix.
    Experiment,
    /// Friedman / Iman-Davenport / Holm battery over a result-matrix CSV.
    Stats {
        matrix: PathBuf,
        #[arg(long, default_value = "CKS")]
        control: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Generate a synthetic graph (ba or pcg) as an edge-list file.
    Generate {
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m_attach: usize,
        #[arg(long, default_value_t = 0.3)]
        p_tri: f64,
    },
    /// Print dataset summaries (nodes, edges, communities).
    Summary { paths: Vec<PathBuf> },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems are validation errors.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match std::panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(_) => {
            eprintln!("error: internal invariant failure");
            ExitCode::from(3)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 2,
        Error::Contract(_) => 3,
        _ => 1,
    }
}

fn effective_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    if let Some(methods) = &cli.methods {
        config.methods = methods
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?;
    }
    if let Some(replicates) = cli.replicates {
        config.replicates = replicates;
    }
    if let Some(workers) = cli.workers {
        config.workers = workers;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Error> {
    let config = effective_config(&cli)?;
    if config.workers > 0 {
        // Ignore failure: the global pool can only be installed once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build_global();
    }
    match &cli.command {
        Command::Rank => {
            for file in cmd_rank(&config)? {
                println!("{}", file.display());
            }
        }
        Command::Experiment => {
            let outputs = cmd_experiment(&config)?;
            for file in outputs.files {
                println!("{}", file.display());
            }
        }
        Command::Stats { matrix, control, alpha } => {
            for file in cmd_stats(matrix, control, *alpha, &config.out_dir, config.master_seed)? {
                println!("{}", file.display());
            }
        }
        Command::Generate { kind, n, m_attach, p_tri } => {
            let out_file = cli
                .out
                .clone()
                .ok_or_else(|| Error::Parameter("generate needs --out <file>".into()))?;
            let seed = cli.seed.unwrap_or(config.master_seed);
            let file = cmd_generate(kind, *n, *m_attach, *p_tri, seed, &out_file)?;
            println!("{}", file.display());
        }
        Command::Summary { paths } => {
            let text = cmd_summary(&config, paths, cli.out.as_deref())?;
            print!("{text}");
        }
    }
    Ok(())
}
