//! Command implementations. clap arg structs normalize into a
//! [`RunConfig`]; each `run_*` executes purely from that config, reads its
//! inputs, delegates the analysis to the library, and emits one output
//! through a single writer. Outputs contain nothing run-dependent, so
//! reruns with the same inputs and configuration are byte-identical
//! regardless of `--workers`.

use crate::config::{
    parse_block_sizes, parse_cluster_pairs, parse_density_grid, parse_log_base, CommandKind,
    ModelKind, ReportFormat, RunConfig,
};
use crate::report;
use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use netparity::builder::{
    pearson_correlation, threshold_by_value, threshold_to_density, CorrelationMatrix,
    DensityTarget,
};
use netparity::compare::{
    cluster_sign_consistency, cluster_sweep_comparison, compare_paired, parity_sweep,
    sign_consistency, ClusterSignConsistency, ClusterSweepComparison, PairedSample,
    RegionPartition, SignConsistency, SweepComparison, SweepPoint,
};
use netparity::graph::Graph;
use netparity::io;
use netparity::parity::{parity_matrix, LogBase, ParityMatrix};
use netparity::synth::{self, Seed};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

// ------------------------------------------------------------ shared input

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| anyhow!("missing {flag}"))
}

fn as_path(value: &Option<String>) -> Option<&Path> {
    value.as_deref().map(Path::new)
}

fn read_correlation(path: &Path) -> Result<CorrelationMatrix> {
    io::read_correlation_csv(path)
        .with_context(|| format!("reading correlation matrix {}", path.display()))
}

fn correlation_from_series(path: &Path) -> Result<CorrelationMatrix> {
    let (series, labels) = io::read_time_series_csv(path)
        .with_context(|| format!("reading time series {}", path.display()))?;
    pearson_correlation(&series)
        .and_then(|cm| cm.with_labels(labels))
        .with_context(|| format!("correlating time series {}", path.display()))
}

/// Loads the single condition of `build`/`sweep` from whichever input flag
/// was given.
fn load_condition(corr: Option<&Path>, series: Option<&Path>) -> Result<CorrelationMatrix> {
    match (corr, series) {
        (Some(path), None) => read_correlation(path),
        (None, Some(path)) => correlation_from_series(path),
        (None, None) => bail!("either --corr or --series is required"),
        (Some(_), Some(_)) => bail!("--corr and --series are mutually exclusive"),
    }
}

fn condition_labels(cm: &CorrelationMatrix) -> Vec<String> {
    match cm.labels() {
        Some(labels) => labels.to_vec(),
        None => (0..cm.node_count()).map(|i| i.to_string()).collect(),
    }
}

fn read_partition(path: &Path) -> Result<Vec<(String, String)>> {
    io::read_partition_csv(path)
        .with_context(|| format!("reading cluster file {}", path.display()))
}

/// All unordered cluster pairs, in the cluster file's first-seen order.
fn default_cluster_pairs(partition: &RegionPartition) -> Vec<(String, String)> {
    let names = partition.cluster_names();
    let mut pairs = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            pairs.push((names[i].clone(), names[j].clone()));
        }
    }
    pairs
}

fn connectivity_warnings(comparison: &SweepComparison) -> Vec<String> {
    let mut warnings = Vec::new();
    for r in &comparison.records {
        for (connected, side) in [(r.connected_a, "condition_a"), (r.connected_b, "condition_b")] {
            if !connected {
                warnings.push(format!(
                    "subject {:?}, mean degree {}: {side} network is disconnected; \
                     parity profiles are sub-normalized",
                    comparison.subject_id, r.mean_degree
                ));
            }
        }
    }
    warnings
}

fn write_report<T: Serialize>(
    config: &RunConfig,
    warnings: &[String],
    result: &T,
    csv: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let text = match config.format {
        ReportFormat::Json => report::render_json(config, warnings, result)?,
        ReportFormat::Csv => csv()?,
    };
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
    report::write_text(as_path(&config.output), &text)
}

// ------------------------------------------------------------------- build

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Correlation matrix CSV (optionally with a label header).
    #[arg(long, value_name = "FILE", conflicts_with = "series")]
    pub corr: Option<PathBuf>,
    /// Node time-series CSV; Pearson correlation is computed first.
    #[arg(long, value_name = "FILE")]
    pub series: Option<PathBuf>,
    /// Target mean degree (default 28 when no target is given).
    #[arg(long, value_name = "K", conflicts_with_all = ["edges", "threshold"])]
    pub mean_degree: Option<f64>,
    /// Exact edge count target.
    #[arg(long, value_name = "M", conflicts_with = "threshold")]
    pub edges: Option<usize>,
    /// Keep pairs with |correlation| strictly above this value instead of
    /// matching a density.
    #[arg(long, value_name = "TAU")]
    pub threshold: Option<f64>,
    /// Reduce to the largest connected component before writing.
    #[arg(long)]
    pub giant_component: bool,
    /// Output edge list (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl BuildArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Build);
        config.corr = path_string(self.corr);
        config.series = path_string(self.series);
        config.edges = self.edges;
        config.threshold = self.threshold;
        if self.edges.is_none() && self.threshold.is_none() {
            // Bake the default density in so the echoed config is complete.
            config.mean_degrees = Some(self.mean_degree.unwrap_or(28.0).to_string());
        }
        config.giant_component = self.giant_component;
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

fn path_string(path: Option<PathBuf>) -> Option<String> {
    path.map(|p| p.display().to_string())
}

pub fn run_build(config: &RunConfig) -> Result<()> {
    let corr = as_path(&config.corr);
    let series = as_path(&config.series);
    let cm = load_condition(corr, series)?;
    let n = cm.node_count();
    let source = corr.or(series).expect("load_condition verified an input");

    let (mut graph, rule) = if let Some(tau) = config.threshold {
        if config.edges.is_some() || config.mean_degrees.is_some() {
            bail!("--threshold excludes --edges and --mean-degree");
        }
        if !tau.is_finite() {
            bail!("--threshold must be finite, got {tau}");
        }
        (threshold_by_value(&cm, tau)?, format!("|correlation| > {tau}"))
    } else {
        let target = match (&config.mean_degrees, config.edges) {
            (Some(_), Some(_)) => bail!("--edges excludes --mean-degree"),
            (None, Some(m)) => DensityTarget::from_edge_count(m, n)
                .map_err(|e| anyhow!("--edges {m}: {e}"))?,
            (Some(spec), None) => {
                let targets = parse_density_grid(spec, n)?;
                match targets[..] {
                    [target] => target,
                    _ => bail!(
                        "build takes a single mean degree, got {} values",
                        targets.len()
                    ),
                }
            }
            (None, None) => bail!("build needs --mean-degree, --edges, or --threshold"),
        };
        (
            threshold_to_density(&cm, target)?,
            format!(
                "top {} pairs by |correlation| (mean degree {})",
                target.edge_count(),
                target.mean_degree()
            ),
        )
    };

    let mut comments = vec![format!("source={}", source.display()), format!("rule={rule}")];
    if config.giant_component {
        let before = graph.node_count();
        let (sub, map) = graph.largest_component_subgraph();
        let kept: Vec<String> = map.new_to_old.iter().map(|&i| graph.label_of(i)).collect();
        comments.push(format!(
            "giant_component=kept {} of {before} nodes",
            sub.node_count()
        ));
        comments.push(format!("kept_nodes={}", kept.join(" ")));
        eprintln!(
            "giant component: kept {} of {before} nodes",
            sub.node_count()
        );
        graph = sub;
    }
    comments.push(format!("edges={}", graph.edge_count()));
    comments.push(format!("connected={}", graph.is_connected()));
    if !graph.is_connected() {
        eprintln!("warning: thresholded network is disconnected");
    }

    match as_path(&config.output) {
        Some(path) => io::write_edge_list(path, &graph, &comments)
            .with_context(|| format!("writing edge list {}", path.display()))?,
        None => {
            let mut w = report::output_writer(None)?;
            io::write_edge_list_to(w.as_mut(), &graph, &comments)?;
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ parity

#[derive(Debug, Args)]
pub struct ParityArgs {
    /// Input edge list.
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Node labels, one per line in index order (default: indices).
    #[arg(long, value_name = "FILE")]
    pub labels: Option<PathBuf>,
    #[arg(long, value_parser = parse_log_base, default_value = "bits")]
    pub log_base: LogBase,
    /// Reduce to the largest connected component first; the retained
    /// original nodes appear as the output's labels.
    #[arg(long)]
    pub giant_component: bool,
    /// Output matrix CSV; a .meta.json sidecar is written next to it.
    #[arg(long, short, value_name = "FILE")]
    pub output: PathBuf,
}

impl ParityArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Parity);
        config.graph = path_string(Some(self.graph));
        config.labels = path_string(self.labels);
        config.log_base = self.log_base;
        config.giant_component = self.giant_component;
        config.workers = workers;
        config.output = path_string(Some(self.output));
        config
    }
}

pub fn run_parity(config: &RunConfig) -> Result<()> {
    let graph_path = Path::new(required(&config.graph, "--graph")?);
    let output = Path::new(required(&config.output, "--output")?);

    let graph = io::read_edge_list(graph_path)
        .with_context(|| format!("reading edge list {}", graph_path.display()))?;
    let labels = match as_path(&config.labels) {
        Some(path) => io::read_labels(path)
            .with_context(|| format!("reading labels {}", path.display()))?,
        None => (0..graph.node_count()).map(|i| i.to_string()).collect(),
    };
    let graph = graph
        .with_labels(labels)
        .with_context(|| format!("applying labels to {}", graph_path.display()))?;

    let graph = if config.giant_component {
        let before = graph.node_count();
        let (sub, _) = graph.largest_component_subgraph();
        eprintln!(
            "giant component: kept {} of {before} nodes",
            sub.node_count()
        );
        sub
    } else {
        graph
    };

    let connected = graph.is_connected();
    if !connected {
        eprintln!(
            "warning: graph {} is disconnected; parity profiles are sub-normalized",
            graph_path.display()
        );
    }
    let pm = parity_matrix(&graph, config.log_base)
        .with_context(|| format!("computing parity for {}", graph_path.display()))?;

    let labels = graph.labels().expect("labels were attached above").to_vec();
    io::write_parity_csv(output, &pm, &labels)
        .with_context(|| format!("writing parity matrix {}", output.display()))?;
    let metadata = io::ParityMatrixMetadata {
        schema_version: io::PARITY_SCHEMA_VERSION,
        log_base: config.log_base,
        node_count: graph.node_count(),
        mean_degree: graph.mean_degree(),
        connected,
    };
    let meta_path = io::parity_metadata_path(output);
    io::write_parity_metadata(&meta_path, &metadata)
        .with_context(|| format!("writing metadata {}", meta_path.display()))?;
    Ok(())
}

// ------------------------------------------------------------------- sweep

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Correlation matrix CSV.
    #[arg(long, value_name = "FILE", conflicts_with = "series")]
    pub corr: Option<PathBuf>,
    /// Node time-series CSV; Pearson correlation is computed first.
    #[arg(long, value_name = "FILE")]
    pub series: Option<PathBuf>,
    /// Density grid: `28`, `8,16,24`, or start:stop:step.
    #[arg(long, value_name = "SPEC", default_value = "8:40:4")]
    pub mean_degrees: String,
    #[arg(long, value_parser = parse_log_base, default_value = "bits")]
    pub log_base: LogBase,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Output report (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl SweepArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Sweep);
        config.corr = path_string(self.corr);
        config.series = path_string(self.series);
        config.mean_degrees = Some(self.mean_degrees);
        config.log_base = self.log_base;
        config.format = self.format;
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SweepResult {
    pub node_count: usize,
    pub points: Vec<SweepPoint>,
}

pub fn run_sweep(config: &RunConfig) -> Result<()> {
    let cm = load_condition(as_path(&config.corr), as_path(&config.series))?;
    let spec = required(&config.mean_degrees, "--mean-degrees")?;
    let targets = parse_density_grid(spec, cm.node_count())?;
    let points = parity_sweep(&cm, &targets, config.log_base)?;
    let warnings: Vec<String> = points
        .iter()
        .filter(|p| !p.connected)
        .map(|p| {
            format!(
                "mean degree {}: thresholded network is disconnected; \
                 parity profiles are sub-normalized",
                p.mean_degree
            )
        })
        .collect();
    let result = SweepResult {
        node_count: cm.node_count(),
        points,
    };
    write_report(config, &warnings, &result, || {
        report::sweep_csv(&result.points)
    })
}

// ----------------------------------------------------------------- compare

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Condition A correlation matrix CSV.
    #[arg(long, value_name = "FILE")]
    pub corr_a: PathBuf,
    /// Condition B correlation matrix CSV.
    #[arg(long, value_name = "FILE")]
    pub corr_b: PathBuf,
    /// Subject identifier echoed into the report.
    #[arg(long, value_name = "ID", default_value = "subject")]
    pub subject_id: String,
    /// Density grid: `28`, `8,16,24`, or start:stop:step.
    #[arg(long, value_name = "SPEC", default_value = "8:40:4")]
    pub mean_degrees: String,
    /// Cluster file: `label,cluster_name` rows.
    #[arg(long, value_name = "FILE")]
    pub clusters: Option<PathBuf>,
    /// Cluster pairs like `frontal:posterior,frontal:limbic`
    /// (default: all pairs from the cluster file).
    #[arg(long, value_name = "SPEC", requires = "clusters")]
    pub cluster_pairs: Option<String>,
    #[arg(long, value_parser = parse_log_base, default_value = "bits")]
    pub log_base: LogBase,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Output report (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl CompareArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Compare);
        config.corr_a = path_string(Some(self.corr_a));
        config.corr_b = path_string(Some(self.corr_b));
        config.subject_id = Some(self.subject_id);
        config.mean_degrees = Some(self.mean_degrees);
        config.clusters = path_string(self.clusters);
        config.cluster_pairs = self.cluster_pairs;
        config.log_base = self.log_base;
        config.format = self.format;
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CompareResult {
    pub comparison: SweepComparison,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_comparison: Option<ClusterSweepComparison>,
}

fn cluster_table_for(
    sample: &PairedSample,
    clusters: &Path,
    cluster_pairs: Option<&str>,
    rows: &[(String, String)],
    targets: &[DensityTarget],
    base: LogBase,
) -> Result<ClusterSweepComparison> {
    let partition = RegionPartition::from_label_pairs(rows, &condition_labels(&sample.condition_a))
        .with_context(|| format!("applying cluster file {}", clusters.display()))?;
    let pairs = match cluster_pairs {
        Some(spec) => parse_cluster_pairs(spec)?,
        None => default_cluster_pairs(&partition),
    };
    if pairs.is_empty() {
        bail!(
            "cluster file {} defines fewer than two clusters; nothing to compare",
            clusters.display()
        );
    }
    cluster_sweep_comparison(sample, &partition, &pairs, targets, base)
        .with_context(|| format!("cluster comparison for subject {:?}", sample.subject_id))
}

pub fn run_compare(config: &RunConfig) -> Result<()> {
    let corr_a = Path::new(required(&config.corr_a, "--corr-a")?);
    let corr_b = Path::new(required(&config.corr_b, "--corr-b")?);
    let subject_id = config
        .subject_id
        .clone()
        .unwrap_or_else(|| "subject".to_string());

    let cm_a = read_correlation(corr_a)?;
    let cm_b = read_correlation(corr_b)?;
    let sample = PairedSample::new(subject_id, cm_a, cm_b).with_context(|| {
        format!("pairing {} with {}", corr_a.display(), corr_b.display())
    })?;
    let spec = required(&config.mean_degrees, "--mean-degrees")?;
    let targets = parse_density_grid(spec, sample.condition_a.node_count())?;
    let comparison = compare_paired(&sample, &targets, config.log_base)?;
    let warnings = connectivity_warnings(&comparison);

    let cluster_comparison = match as_path(&config.clusters) {
        Some(path) => {
            let rows = read_partition(path)?;
            Some(cluster_table_for(
                &sample,
                path,
                config.cluster_pairs.as_deref(),
                &rows,
                &targets,
                config.log_base,
            )?)
        }
        None => None,
    };
    let result = CompareResult {
        comparison,
        cluster_comparison,
    };
    write_report(config, &warnings, &result, || {
        match &result.cluster_comparison {
            Some(table) => report::cluster_csv(std::slice::from_ref(table)),
            None => report::compare_csv(std::slice::from_ref(&result.comparison)),
        }
    })
}

// ------------------------------------------------------------------ cohort

#[derive(Debug, Args)]
pub struct CohortArgs {
    /// Manifest CSV: `subject_id,path_a,path_b` rows; relative paths are
    /// resolved against the manifest's directory.
    #[arg(long, value_name = "FILE")]
    pub manifest: PathBuf,
    /// Density grid: `28`, `8,16,24`, or start:stop:step.
    #[arg(long, value_name = "SPEC", default_value = "8:40:4")]
    pub mean_degrees: String,
    /// Cluster file: `label,cluster_name` rows.
    #[arg(long, value_name = "FILE")]
    pub clusters: Option<PathBuf>,
    /// Cluster pairs like `frontal:posterior,frontal:limbic`
    /// (default: all pairs from the cluster file).
    #[arg(long, value_name = "SPEC", requires = "clusters")]
    pub cluster_pairs: Option<String>,
    #[arg(long, value_parser = parse_log_base, default_value = "bits")]
    pub log_base: LogBase,
    /// Recorded in the report for provenance; the cohort pipeline itself
    /// draws no random numbers.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Output report (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl CohortArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Cohort);
        config.manifest = path_string(Some(self.manifest));
        config.mean_degrees = Some(self.mean_degrees);
        config.clusters = path_string(self.clusters);
        config.cluster_pairs = self.cluster_pairs;
        config.log_base = self.log_base;
        config.seed = self.seed;
        config.format = self.format;
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CohortResult {
    pub subjects: Vec<SweepComparison>,
    pub sign_consistency: SignConsistency,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tables: Option<Vec<ClusterSweepComparison>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_sign_consistency: Option<Vec<ClusterSignConsistency>>,
}

struct ManifestRow {
    subject_id: String,
    path_a: PathBuf,
    path_b: PathBuf,
}

fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let file = std::fs::File::open(path)
        .with_context(|| format!("opening manifest {}", path.display()))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(std::io::BufReader::new(file));
    let resolve = |p: &str| {
        let pb = PathBuf::from(p);
        if pb.is_relative() {
            dir.join(pb)
        } else {
            pb
        }
    };
    let mut rows: Vec<ManifestRow> = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("reading manifest {}", path.display()))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            bail!(
                "manifest {} line {line}: expected subject_id,path_a,path_b, got {} fields",
                path.display(),
                record.len()
            );
        }
        if index == 0 && record[0].eq_ignore_ascii_case("subject_id") {
            continue;
        }
        if record[0].is_empty() {
            bail!("manifest {} line {line}: empty subject id", path.display());
        }
        if rows.iter().any(|r| r.subject_id == record[0]) {
            bail!(
                "manifest {} line {line}: duplicate subject id {:?}",
                path.display(),
                &record[0]
            );
        }
        rows.push(ManifestRow {
            subject_id: record[0].to_string(),
            path_a: resolve(&record[1]),
            path_b: resolve(&record[2]),
        });
    }
    if rows.is_empty() {
        bail!("manifest {} lists no subjects", path.display());
    }
    Ok(rows)
}

pub fn run_cohort(config: &RunConfig) -> Result<()> {
    let manifest_path = Path::new(required(&config.manifest, "--manifest")?);
    let manifest = read_manifest(manifest_path)?;
    let spec = required(&config.mean_degrees, "--mean-degrees")?;
    let cluster_rows = as_path(&config.clusters).map(read_partition).transpose()?;

    let mut subjects = Vec::with_capacity(manifest.len());
    let mut cluster_tables = Vec::new();
    let mut warnings = Vec::new();
    for row in &manifest {
        let cm_a = read_correlation(&row.path_a)?;
        let cm_b = read_correlation(&row.path_b)?;
        let sample =
            PairedSample::new(row.subject_id.clone(), cm_a, cm_b).with_context(|| {
                format!(
                    "subject {:?}: pairing {} with {}",
                    row.subject_id,
                    row.path_a.display(),
                    row.path_b.display()
                )
            })?;
        let targets = parse_density_grid(spec, sample.condition_a.node_count())
            .with_context(|| format!("subject {:?}", row.subject_id))?;
        let comparison = compare_paired(&sample, &targets, config.log_base)?;
        warnings.extend(connectivity_warnings(&comparison));
        if let (Some(path), Some(rows)) = (as_path(&config.clusters), &cluster_rows) {
            cluster_tables.push(cluster_table_for(
                &sample,
                path,
                config.cluster_pairs.as_deref(),
                rows,
                &targets,
                config.log_base,
            )?);
        }
        subjects.push(comparison);
    }

    let consistency = sign_consistency(&subjects)?;
    let (cluster_tables, cluster_consistency) = if cluster_tables.is_empty() {
        (None, None)
    } else {
        let consistency = cluster_sign_consistency(&cluster_tables)?;
        (Some(cluster_tables), Some(consistency))
    };
    let result = CohortResult {
        subjects,
        sign_consistency: consistency,
        cluster_tables,
        cluster_sign_consistency: cluster_consistency,
    };
    write_report(config, &warnings, &result, || match &result.cluster_tables {
        Some(tables) => report::cluster_csv(tables),
        None => report::compare_csv(&result.subjects),
    })
}

// ------------------------------------------------------------------- synth

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Generator family.
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Node count (all models except rewire).
    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,
    /// Edge probability (er).
    #[arg(long, value_name = "P")]
    pub probability: Option<f64>,
    /// Fraction of edges to relocate (rewire).
    #[arg(long, value_name = "F")]
    pub fraction: Option<f64>,
    /// Input edge list to rewire.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Block sizes like `40,32,32` (block).
    #[arg(long, value_name = "SIZES")]
    pub blocks: Option<String>,
    /// Within-block correlation level (block).
    #[arg(long, value_name = "C")]
    pub within: Option<f64>,
    /// Between-block correlation level (block).
    #[arg(long, value_name = "C")]
    pub between: Option<f64>,
    /// Uniform noise half-width added to every off-diagonal entry (block).
    #[arg(long, value_name = "J")]
    pub jitter: Option<f64>,
    /// RNG seed (er, block, rewire).
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,
    /// Output file (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl SynthArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Synth);
        config.model = Some(self.model);
        config.nodes = self.nodes;
        config.probability = self.probability;
        config.fraction = self.fraction;
        config.graph = path_string(self.graph);
        config.blocks = self.blocks;
        config.within = self.within;
        config.between = self.between;
        config.jitter = self.jitter;
        config.seed = self.seed;
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

fn require_flag<T: Copy>(value: Option<T>, flag: &str, model: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("--model {model} requires {flag}"))
}

fn forbid_flag<T>(value: &Option<T>, flag: &str, model: &str) -> Result<()> {
    if value.is_some() {
        bail!("{flag} does not apply to --model {model}");
    }
    Ok(())
}

enum SynthOutput {
    Graph(Graph),
    Correlation(CorrelationMatrix),
}

pub fn run_synth(config: &RunConfig) -> Result<()> {
    let kind = *required(&config.model, "--model")?;
    let model = match kind {
        ModelKind::Er => "er",
        ModelKind::Cycle => "cycle",
        ModelKind::Path => "path",
        ModelKind::Star => "star",
        ModelKind::Complete => "complete",
        ModelKind::Block => "block",
        ModelKind::Rewire => "rewire",
    };
    let seeded = matches!(kind, ModelKind::Er | ModelKind::Block | ModelKind::Rewire);
    if !seeded {
        forbid_flag(&config.seed, "--seed", model)?;
    }
    if !matches!(kind, ModelKind::Er) {
        forbid_flag(&config.probability, "--probability", model)?;
    }
    if !matches!(kind, ModelKind::Rewire) {
        forbid_flag(&config.fraction, "--fraction", model)?;
        forbid_flag(&config.graph, "--graph", model)?;
    }
    if !matches!(kind, ModelKind::Block) {
        forbid_flag(&config.blocks, "--blocks", model)?;
        forbid_flag(&config.within, "--within", model)?;
        forbid_flag(&config.between, "--between", model)?;
        forbid_flag(&config.jitter, "--jitter", model)?;
    }

    let mut comments = vec![format!("model={model}")];
    let output = match kind {
        ModelKind::Er => {
            let n = require_flag(config.nodes, "--nodes", model)?;
            let p = require_flag(config.probability, "--probability", model)?;
            let seed = require_flag(config.seed, "--seed", model)?;
            let g = synth::erdos_renyi(n, p, Seed(seed))?;
            comments.push(format!("nodes={n}"));
            comments.push(format!("probability={p}"));
            comments.push(format!("seed={seed}"));
            comments.push(format!("rng={}", synth::GENERATOR_ALGORITHM));
            SynthOutput::Graph(g)
        }
        ModelKind::Cycle | ModelKind::Path | ModelKind::Star | ModelKind::Complete => {
            let n = require_flag(config.nodes, "--nodes", model)?;
            let g = match kind {
                ModelKind::Cycle => synth::cycle(n)?,
                ModelKind::Path => synth::path(n)?,
                ModelKind::Star => synth::star(n)?,
                ModelKind::Complete => synth::complete(n)?,
                _ => unreachable!(),
            };
            comments.push(format!("nodes={n}"));
            SynthOutput::Graph(g)
        }
        ModelKind::Block => {
            let n = require_flag(config.nodes, "--nodes", model)?;
            let blocks_spec = required(&config.blocks, "--blocks")?;
            let within = require_flag(config.within, "--within", model)?;
            let between = require_flag(config.between, "--between", model)?;
            let jitter = require_flag(config.jitter, "--jitter", model)?;
            let seed = require_flag(config.seed, "--seed", model)?;
            let sizes = parse_block_sizes(blocks_spec)?;
            let cm = synth::block_correlation(n, &sizes, within, between, jitter, Seed(seed))?;
            comments.push(format!("nodes={n}"));
            comments.push(format!("blocks={blocks_spec}"));
            comments.push(format!("within={within}"));
            comments.push(format!("between={between}"));
            comments.push(format!("jitter={jitter}"));
            comments.push(format!("seed={seed}"));
            comments.push(format!("rng={}", synth::GENERATOR_ALGORITHM));
            SynthOutput::Correlation(cm)
        }
        ModelKind::Rewire => {
            forbid_flag(&config.nodes, "--nodes", model)?;
            let input = Path::new(required(&config.graph, "--graph")?);
            let fraction = require_flag(config.fraction, "--fraction", model)?;
            let seed = require_flag(config.seed, "--seed", model)?;
            let g = io::read_edge_list(input)
                .with_context(|| format!("reading edge list {}", input.display()))?;
            let rewired = synth::rewire(&g, fraction, Seed(seed))?;
            comments.push(format!("source={}", input.display()));
            comments.push(format!("fraction={fraction}"));
            comments.push(format!("seed={seed}"));
            comments.push(format!("rng={}", synth::GENERATOR_ALGORITHM));
            SynthOutput::Graph(rewired)
        }
    };

    match output {
        SynthOutput::Graph(g) => {
            comments.push(format!("edges={}", g.edge_count()));
            match as_path(&config.output) {
                Some(path) => io::write_edge_list(path, &g, &comments)
                    .with_context(|| format!("writing edge list {}", path.display()))?,
                None => {
                    let mut w = report::output_writer(None)?;
                    io::write_edge_list_to(w.as_mut(), &g, &comments)?;
                }
            }
        }
        SynthOutput::Correlation(cm) => match as_path(&config.output) {
            Some(path) => io::write_correlation_csv(path, &cm, &comments)
                .with_context(|| format!("writing correlation matrix {}", path.display()))?,
            None => {
                let mut w = report::output_writer(None)?;
                io::write_correlation_csv_to(w.as_mut(), &cm, &comments)?;
            }
        },
    }
    Ok(())
}

// ------------------------------------------------------------------ export

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Parity matrix CSV produced by the parity command.
    #[arg(long, value_name = "FILE")]
    pub parity: PathBuf,
    /// Keep pairs with parity >= this value.
    #[arg(long, value_name = "CUTOFF", default_value_t = 0.25)]
    pub cutoff: f64,
    /// Output TSV (stdout when omitted).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl ExportArgs {
    pub fn into_config(self, workers: Option<usize>) -> RunConfig {
        let mut config = RunConfig::new(CommandKind::Export);
        config.parity = path_string(Some(self.parity));
        config.cutoff = Some(self.cutoff);
        config.workers = workers;
        config.output = path_string(self.output);
        config
    }
}

pub fn run_export(config: &RunConfig) -> Result<()> {
    let input = Path::new(required(&config.parity, "--parity")?);
    let cutoff = config.cutoff.unwrap_or(0.25);
    if !cutoff.is_finite() {
        bail!("--cutoff must be finite, got {cutoff}");
    }
    let (rows, labels) = io::read_parity_csv(input)
        .with_context(|| format!("reading parity matrix {}", input.display()))?;
    let meta_path = io::parity_metadata_path(input);
    let log_base = if meta_path.exists() {
        io::read_parity_metadata(&meta_path)
            .with_context(|| format!("reading metadata {}", meta_path.display()))?
            .log_base
    } else {
        eprintln!(
            "warning: no metadata sidecar at {}; assuming log base bits",
            meta_path.display()
        );
        LogBase::Bits
    };
    let pm = ParityMatrix::from_rows(rows, log_base)
        .with_context(|| format!("validating parity matrix {}", input.display()))?;

    let written = match as_path(&config.output) {
        Some(path) => io::write_parity_edge_list(path, &pm, &labels, cutoff)
            .with_context(|| format!("writing parity edge list {}", path.display()))?,
        None => {
            let mut w = report::output_writer(None)?;
            io::write_parity_edge_list_to(w.as_mut(), &pm, &labels, cutoff)?
        }
    };
    eprintln!(
        "exported {written} of {} pairs at cutoff {cutoff}",
        pm.node_count() * (pm.node_count() - 1) / 2
    );
    Ok(())
}
