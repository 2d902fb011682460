//! Effective run configuration: everything that influences the analysis,
//! normalized from the command line with defaults applied. The serialized
//! form round-trips losslessly and is echoed into reports so a run can be
//! reproduced from its output alone.

use anyhow::{anyhow, bail, Result};
use netparity::builder::DensityTarget;
use netparity::parity::LogBase;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Build,
    Parity,
    Sweep,
    Compare,
    Cohort,
    Synth,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Er,
    Cycle,
    Path,
    Star,
    Complete,
    Block,
    Rewire,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// One run, fully specified. Fields are None when they do not apply to the
/// command. `workers` and `output` never change results; [`RunConfig::echo`]
/// clears them so reports stay byte-identical across execution details.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr_a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr_b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clusters: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,

    /// Density grid spec: a single value `28`, a list `8,16,24`, or a
    /// range `8:40:4`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_degrees: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    pub log_base: LogBase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_pairs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub giant_component: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject_id: Option<String>,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub between: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub format: ReportFormat,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            graph: None,
            corr: None,
            series: None,
            corr_a: None,
            corr_b: None,
            manifest: None,
            labels: None,
            clusters: None,
            parity: None,
            mean_degrees: None,
            edges: None,
            threshold: None,
            log_base: LogBase::Bits,
            cluster_pairs: None,
            cutoff: None,
            giant_component: false,
            subject_id: None,
            model: None,
            nodes: None,
            probability: None,
            fraction: None,
            blocks: None,
            within: None,
            between: None,
            jitter: None,
            seed: None,
            workers: None,
            output: None,
            format: ReportFormat::Json,
        }
    }

    /// The configuration as echoed into reports: execution details that
    /// cannot change results are cleared, so identical analyses produce
    /// identical reports regardless of worker count or output path.
    pub fn echo(&self) -> Self {
        Self {
            workers: None,
            output: None,
            ..self.clone()
        }
    }
}

pub fn parse_log_base(s: &str) -> std::result::Result<LogBase, String> {
    LogBase::from_name(s).ok_or_else(|| format!("expected \"bits\" or \"nats\", got {s:?}"))
}

/// Parses a `--mean-degrees` spec into density targets for an N-node
/// network. Accepts `28`, `8,16,24`, or `8:40:4` (start:stop:step,
/// inclusive of stop when the step lands on it).
pub fn parse_density_grid(spec: &str, n: usize) -> Result<Vec<DensityTarget>> {
    let values = parse_degree_values(spec)?;
    values
        .into_iter()
        .map(|k| {
            DensityTarget::from_mean_degree(k, n)
                .map_err(|e| anyhow!("--mean-degrees value {k} is unusable for {n} nodes: {e}"))
        })
        .collect()
}

fn parse_degree_values(spec: &str) -> Result<Vec<f64>> {
    let parse_one = |text: &str| -> Result<f64> {
        text.trim()
            .parse::<f64>()
            .map_err(|_| anyhow!("--mean-degrees: {text:?} is not a number"))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("--mean-degrees range must be start:stop:step, got {spec:?}");
        }
        let start = parse_one(parts[0])?;
        let stop = parse_one(parts[1])?;
        let step = parse_one(parts[2])?;
        if !step.is_finite() || step <= 0.0 {
            bail!("--mean-degrees step must be positive, got {step}");
        }
        if stop < start {
            bail!("--mean-degrees range is empty: stop {stop} < start {start}");
        }
        // Index arithmetic keeps integer grids exact and tolerates float
        // steps that land a hair past the stop.
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|i| start + step * i as f64).collect());
    }
    let values: Vec<f64> = spec
        .split(',')
        .map(parse_one)
        .collect::<Result<Vec<f64>>>()?;
    if values.is_empty() {
        bail!("--mean-degrees is empty");
    }
    Ok(values)
}

/// Parses `--cluster-pairs` specs like `frontal:posterior,frontal:limbic`.
pub fn parse_cluster_pairs(spec: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for part in spec.split(',') {
        let Some((a, b)) = part.split_once(':') else {
            bail!("--cluster-pairs entry {part:?} must be name:name");
        };
        let (a, b) = (a.trim(), b.trim());
        if a.is_empty() || b.is_empty() {
            bail!("--cluster-pairs entry {part:?} has an empty cluster name");
        }
        if a == b {
            bail!("--cluster-pairs entry {part:?} pairs a cluster with itself");
        }
        pairs.push((a.to_string(), b.to_string()));
    }
    Ok(pairs)
}

/// Parses `--blocks` sizes like `40,32,32`.
pub fn parse_block_sizes(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("--blocks entry {part:?} is not a block size"))
        })
        .collect()
}
