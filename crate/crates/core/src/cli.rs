//! Orchestration layer behind the command-line front end: configuration,
//! dataset loading, command implementations, and output emission with
//! sidecar manifests.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::experiments::{
    default_fractions, infected_vs_fraction_with_table, infected_vs_probability_with_table,
    rank_method_variant, spreader_distance_curve, time_ranking, write_curves_csv,
    write_timings_csv, ExperimentCurve, TimingRecord, DEFAULT_ACTIVATION_PROBABILITY,
    DEFAULT_PROBABILITIES, DEFAULT_SWEEP_FRACTION,
};
use crate::graph::{generate_ba, generate_powerlaw_cluster, graph_summary, load_edge_list, Graph};
use crate::community::louvain;
use crate::rng::{derive_seed, RNG_IDENTITY};
use crate::score::Method;
use crate::stats::{friedman_report, ResultMatrix};

/// One dataset to load from disk or to generate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    /// Display name; defaults to the file stem or a generator tag.
    #[serde(default)]
    pub name: Option<String>,
    /// Edge-list file (exclusive with `generator`).
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Mark a file as a directed edge list (edges are symmetrized).
    #[serde(default)]
    pub directed: bool,
    /// `"ba"` or `"pcg"` (exclusive with `path`).
    #[serde(default)]
    pub generator: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub m_attach: Option<usize>,
    #[serde(default)]
    pub p_tri: Option<f64>,
    /// Generator seed; derived from the master seed when absent.
    #[serde(default)]
    pub seed: Option<u64>,
}

impl DatasetSpec {
    pub fn from_path(path: PathBuf) -> DatasetSpec {
        DatasetSpec {
            name: None,
            path: Some(path),
            directed: false,
            generator: None,
            n: None,
            m_attach: None,
            p_tri: None,
            seed: None,
        }
    }
}

/// Run configuration: a TOML file plus flag overrides (flags win).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSpec>,
    pub methods: Vec<Method>,
    /// Spreader-fraction grid; empty selects the size-based default grid.
    pub fractions: Vec<f64>,
    /// Activation-probability grid of the probability sweep.
    pub probabilities: Vec<f64>,
    pub replicates: usize,
    /// Activation probability of the fraction sweep.
    pub activation_probability: f64,
    /// Spreader fraction of the probability sweep.
    pub spreader_fraction: f64,
    pub master_seed: u64,
    pub out_dir: PathBuf,
    /// Worker threads; 0 keeps the library default.
    pub workers: usize,
    /// Whether the CKS score counts the node's own community.
    pub cks_include_own_community: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            methods: Method::EXPERIMENT_SET.to_vec(),
            fractions: Vec::new(),
            probabilities: DEFAULT_PROBABILITIES.to_vec(),
            replicates: 100,
            activation_probability: DEFAULT_ACTIVATION_PROBABILITY,
            spreader_fraction: DEFAULT_SWEEP_FRACTION,
            master_seed: 42,
            out_dir: PathBuf::from("results"),
            workers: 0,
            cks_include_own_community: true,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.datasets.is_empty() {
            return Err(Error::Config("at least one dataset is required".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method is required".into()));
        }
        if self.methods.contains(&Method::Degree) {
            return Err(Error::Config(
                "DEGREE is a support measure, not an experiment method".into(),
            ));
        }
        if self.replicates < 1 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.activation_probability) {
            return Err(Error::Config("activation_probability must lie in [0, 1]".into()));
        }
        if !(self.spreader_fraction > 0.0 && self.spreader_fraction <= 1.0) {
            return Err(Error::Config("spreader_fraction must lie in (0, 1]".into()));
        }
        if self.probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config("probabilities must lie in [0, 1]".into()));
        }
        if self.fractions.iter().any(|f| !(*f > 0.0 && *f <= 1.0)) {
            return Err(Error::Config("fractions must lie in (0, 1]".into()));
        }
        for spec in &self.datasets {
            match (&spec.path, &spec.generator) {
                (Some(_), None) => {}
                (None, Some(kind)) => {
                    if !matches!(kind.as_str(), "ba" | "pcg") {
                        return Err(Error::Config(format!(
                            "unknown generator '{kind}' (expected 'ba' or 'pcg')"
                        )));
                    }
                    if spec.n.is_none() || spec.m_attach.is_none() {
                        return Err(Error::Config(
                            "generator datasets need n and m_attach".into(),
                        ));
                    }
                }
                _ => {
                    return Err(Error::Config(
                        "each dataset needs exactly one of path or generator".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// SHA-256 over the canonical JSON form; recorded in every manifest.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex_digest(&bytes)
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Provenance sidecar written next to every output file.
#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    config_hash: &'a str,
    master_seed: u64,
    rng: &'a str,
    file: &'a str,
}

fn emit(
    dir: &Path,
    file_name: &str,
    bytes: &[u8],
    command: &str,
    config_hash: &str,
    master_seed: u64,
) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let path = dir.join(file_name);
    fs::write(&path, bytes).map_err(|e| Error::io(path.display().to_string(), e))?;
    let manifest = Manifest {
        tool: "cks",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config_hash,
        master_seed,
        rng: RNG_IDENTITY,
        file: file_name,
    };
    let manifest_path = dir.join(format!("{file_name}.manifest.json"));
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&manifest_path, text)
        .map_err(|e| Error::io(manifest_path.display().to_string(), e))?;
    Ok(path)
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Load or generate one dataset. Generated datasets without an explicit seed
/// derive one from the master seed and the dataset position.
pub fn load_dataset(spec: &DatasetSpec, master_seed: u64, index: usize) -> Result<Graph> {
    let mut g = match (&spec.path, &spec.generator) {
        (Some(path), None) => load_edge_list(path, spec.directed)?,
        (None, Some(kind)) => {
            let n = spec
                .n
                .ok_or_else(|| Error::Config("generator dataset needs n".into()))?;
            let m_attach = spec
                .m_attach
                .ok_or_else(|| Error::Config("generator dataset needs m_attach".into()))?;
            let seed = spec
                .seed
                .unwrap_or_else(|| derive_seed(master_seed, 0x6765_6e00 + index as u64));
            match kind.as_str() {
                "ba" => generate_ba(n, m_attach, seed)?,
                "pcg" => {
                    let p_tri = spec.p_tri.ok_or_else(|| {
                        Error::Config("pcg generator dataset needs p_tri".into())
                    })?;
                    generate_powerlaw_cluster(n, m_attach, p_tri, seed)?
                }
                other => return Err(Error::Config(format!("unknown generator '{other}'"))),
            }
        }
        _ => {
            return Err(Error::Config(
                "dataset needs exactly one of path or generator".into(),
            ))
        }
    };
    if let Some(name) = &spec.name {
        g.set_name(name.clone());
    }
    Ok(g)
}

/// `rank`: one score-table CSV per (dataset, method).
pub fn cmd_rank(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let hash = config.hash();
    let mut files = Vec::new();
    for (di, spec) in config.datasets.iter().enumerate() {
        let g = load_dataset(spec, config.master_seed, di)?;
        let ds = sanitize(g.name());
        let ds_seed = derive_seed(config.master_seed, di as u64);
        for &method in &config.methods {
            let table =
                rank_method_variant(&g, method, ds_seed, config.cks_include_own_community);
            let mut bytes = Vec::new();
            table.write_csv(&g, &mut bytes)?;
            let file = format!("rank_{ds}_{}.csv", method.as_str().to_lowercase());
            files.push(emit(
                &config.out_dir,
                &file,
                &bytes,
                "rank",
                &hash,
                config.master_seed,
            )?);
        }
    }
    Ok(files)
}

/// Everything `experiment` produced.
pub struct ExperimentOutputs {
    pub files: Vec<PathBuf>,
    /// Dataset × fraction rows vs method columns of mean infected scale;
    /// absent when the grid is too small for a valid matrix.
    pub matrix: Option<ResultMatrix>,
}

/// `experiment`: the full sweep. Per dataset it emits the fraction sweep
/// (`fig4_<ds>.csv`), the probability sweep (`fig5_<ds>.csv`), the spreader
/// distance curve (`fig6_<ds>.csv`), ranking wall times (`fig7_<ds>.csv`),
/// and finally the stats-ready `result_matrix.csv` across datasets.
pub fn cmd_experiment(config: &ExperimentConfig) -> Result<ExperimentOutputs> {
    config.validate()?;
    let hash = config.hash();
    let seed = config.master_seed;
    let mut files = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();

    for (di, spec) in config.datasets.iter().enumerate() {
        let g = load_dataset(spec, seed, di)?;
        let ds = sanitize(g.name());
        let ds_seed = derive_seed(seed, di as u64);
        let fractions: Vec<f64> = if config.fractions.is_empty() {
            default_fractions(g.n()).to_vec()
        } else {
            let mut f = config.fractions.clone();
            f.sort_by(f64::total_cmp);
            f.dedup();
            f
        };

        let mut fig4: Vec<ExperimentCurve> = Vec::new();
        let mut fig5: Vec<ExperimentCurve> = Vec::new();
        let mut fig6: Vec<ExperimentCurve> = Vec::new();
        let mut fig7: Vec<TimingRecord> = Vec::new();
        for &method in &config.methods {
            let table =
                rank_method_variant(&g, method, ds_seed, config.cks_include_own_community);
            fig4.push(infected_vs_fraction_with_table(
                &g,
                &table,
                &fractions,
                config.activation_probability,
                config.replicates,
                derive_seed(ds_seed, 4),
            )?);
            fig5.push(infected_vs_probability_with_table(
                &g,
                &table,
                &config.probabilities,
                config.spreader_fraction,
                config.replicates,
                derive_seed(ds_seed, 5),
            )?);
            fig6.push(spreader_distance_curve(&g, &table, &fractions)?);
            fig7.push(time_ranking(method, &g, ds_seed));
        }

        for (name, curves) in [("fig4", &fig4), ("fig5", &fig5), ("fig6", &fig6)] {
            let mut bytes = Vec::new();
            write_curves_csv(curves, &mut bytes)?;
            files.push(emit(
                &config.out_dir,
                &format!("{name}_{ds}.csv"),
                &bytes,
                "experiment",
                &hash,
                seed,
            )?);
        }
        let mut bytes = Vec::new();
        write_timings_csv(&fig7, &mut bytes)?;
        files.push(emit(
            &config.out_dir,
            &format!("fig7_{ds}.csv"),
            &bytes,
            "experiment",
            &hash,
            seed,
        )?);

        for (fi, &fraction) in fractions.iter().enumerate() {
            problems.push(format!("{ds}@{fraction}"));
            rows.push(fig4.iter().map(|c| c.points()[fi].mean).collect());
        }
    }

    let algorithms: Vec<String> = config.methods.iter().map(|m| m.to_string()).collect();
    let matrix = match ResultMatrix::new(problems, algorithms, rows) {
        Ok(matrix) => {
            let mut bytes = Vec::new();
            matrix.write_csv(&mut bytes)?;
            files.push(emit(
                &config.out_dir,
                "result_matrix.csv",
                &bytes,
                "experiment",
                &hash,
                seed,
            )?);
            Some(matrix)
        }
        // A 1-method or 1-point grid cannot feed the stats battery.
        Err(_) => None,
    };
    Ok(ExperimentOutputs { files, matrix })
}

/// `stats`: Friedman / Iman-Davenport / Holm battery over a matrix file.
pub fn cmd_stats(
    matrix_path: &Path,
    control: &str,
    alpha: f64,
    out_dir: &Path,
    master_seed: u64,
) -> Result<Vec<PathBuf>> {
    let file = fs::File::open(matrix_path)
        .map_err(|e| Error::io(matrix_path.display().to_string(), e))?;
    let matrix = ResultMatrix::from_csv(std::io::BufReader::new(file))?;
    let report = friedman_report(&matrix, control, alpha)?;

    #[derive(Serialize)]
    struct StatsInvocation<'a> {
        matrix: &'a str,
        control: &'a str,
        alpha: f64,
    }
    let hash = hex_digest(
        &serde_json::to_vec(&StatsInvocation {
            matrix: &matrix_path.display().to_string(),
            control,
            alpha,
        })
        .expect("serializes"),
    );

    let mut files = Vec::new();
    let mut bytes = Vec::new();
    report.write_ranks_csv(&mut bytes)?;
    files.push(emit(out_dir, "friedman_ranks.csv", &bytes, "stats", &hash, master_seed)?);
    let mut bytes = Vec::new();
    report.write_holm_csv(&mut bytes)?;
    files.push(emit(out_dir, "holm_apv.csv", &bytes, "stats", &hash, master_seed)?);
    let mut json = report.to_json();
    json.push('\n');
    files.push(emit(
        out_dir,
        "stats_report.json",
        json.as_bytes(),
        "stats",
        &hash,
        master_seed,
    )?);
    Ok(files)
}

/// `generate`: write a synthetic graph as an edge-list file.
pub fn cmd_generate(
    kind: &str,
    n: usize,
    m_attach: usize,
    p_tri: f64,
    seed: u64,
    out_file: &Path,
) -> Result<PathBuf> {
    let g = match kind.to_ascii_lowercase().as_str() {
        "ba" => generate_ba(n, m_attach, seed)?,
        "pcg" => generate_powerlaw_cluster(n, m_attach, p_tri, seed)?,
        other => {
            return Err(Error::Parameter(format!(
                "unknown generator '{other}' (expected 'ba' or 'pcg')"
            )))
        }
    };
    let mut bytes = Vec::new();
    g.write_edge_list(&mut bytes)
        .map_err(|e| Error::io(out_file.display().to_string(), e))?;

    #[derive(Serialize)]
    struct GenerateInvocation<'a> {
        kind: &'a str,
        n: usize,
        m_attach: usize,
        p_tri: f64,
        seed: u64,
    }
    let hash = hex_digest(
        &serde_json::to_vec(&GenerateInvocation { kind, n, m_attach, p_tri, seed })
            .expect("serializes"),
    );
    let dir = out_file.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = out_file
        .file_name()
        .ok_or_else(|| Error::Parameter("output path has no file name".into()))?
        .to_string_lossy()
        .into_owned();
    emit(
        dir.unwrap_or_else(|| Path::new(".")),
        &file_name,
        &bytes,
        "generate",
        &hash,
        seed,
    )
}

/// `summary`: dataset counts as CSV text (`dataset,nodes,edges,communities`),
/// optionally persisted to `write_to/summary.csv`.
pub fn cmd_summary(
    config: &ExperimentConfig,
    paths: &[PathBuf],
    write_to: Option<&Path>,
) -> Result<String> {
    let specs: Vec<DatasetSpec> = if paths.is_empty() {
        config.datasets.clone()
    } else {
        paths.iter().cloned().map(DatasetSpec::from_path).collect()
    };
    if specs.is_empty() {
        return Err(Error::Config(
            "summary needs dataset paths or a config with datasets".into(),
        ));
    }
    let mut text = String::from("dataset,nodes,edges,communities\n");
    for (di, spec) in specs.iter().enumerate() {
        let g = load_dataset(spec, config.master_seed, di)?;
        let partition = louvain(&g, derive_seed(config.master_seed, di as u64));
        let s = graph_summary(&g, Some(&partition));
        text.push_str(&format!(
            "{},{},{},{}\n",
            s.source_name,
            s.nodes,
            s.edges,
            s.communities.expect("partition supplied")
        ));
    }
    if let Some(dir) = write_to {
        emit(
            dir,
            "summary.csv",
            text.as_bytes(),
            "summary",
            &config.hash(),
            config.master_seed,
        )?;
    }
    Ok(text)
}
