//! Paired-condition and cohort analyses.
//!
//! The central object is a paired sample: two correlation matrices for the
//! same subject. Both are thresholded to identical edge counts at each
//! density target, parity matrices are computed for each side, and the
//! condition difference (divergence, always b minus a) is recorded per
//! density. Cluster-level variants average parity over cross pairs between
//! disjoint node clusters. Cohort-level summaries count subjects whose
//! mean divergence is strictly positive.

use crate::builder::{density_sweep, CorrelationMatrix, DensityTarget};
use crate::parity::{average_parity, parity_matrix, LogBase, ParityMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Assignment of node indices to named clusters. Nodes may be left out;
/// unassigned nodes take no part in cluster analyses but still count in
/// global averages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPartition {
    cluster_names: Vec<String>,
    /// Node index -> cluster index into `cluster_names`.
    assignment: Vec<Option<usize>>,
}

impl RegionPartition {
    /// Builds a partition from explicit cluster indices. Every assigned id
    /// must reference `cluster_names`; violations are a caller bug.
    pub fn new(cluster_names: Vec<String>, assignment: Vec<Option<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(cluster_names.len());
        for name in &cluster_names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: name.clone(),
                });
            }
        }
        assert!(
            assignment
                .iter()
                .flatten()
                .all(|&id| id < cluster_names.len()),
            "cluster id out of range for the provided cluster names"
        );
        Ok(Self {
            cluster_names,
            assignment,
        })
    }

    /// Builds a partition from (node label, cluster name) rows, resolved
    /// against the node label order of the graphs under analysis.
    pub fn from_label_pairs(rows: &[(String, String)], node_labels: &[String]) -> Result<Self> {
        let index_of: std::collections::HashMap<&str, usize> = node_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut cluster_names: Vec<String> = Vec::new();
        let mut assignment = vec![None; node_labels.len()];
        for (label, cluster) in rows {
            let Some(&node) = index_of.get(label.as_str()) else {
                return Err(Error::UnknownPartitionLabel {
                    label: label.clone(),
                });
            };
            if assignment[node].is_some() {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
            let cluster_id = match cluster_names.iter().position(|c| c == cluster) {
                Some(id) => id,
                None => {
                    cluster_names.push(cluster.clone());
                    cluster_names.len() - 1
                }
            };
            assignment[node] = Some(cluster_id);
        }
        Ok(Self {
            cluster_names,
            assignment,
        })
    }

    pub fn cluster_names(&self) -> &[String] {
        &self.cluster_names
    }

    /// Node indices of the named cluster, ascending.
    pub fn members(&self, name: &str) -> Result<Vec<usize>> {
        let id = self
            .cluster_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownCluster {
                name: name.to_string(),
            })?;
        Ok(self
            .assignment
            .iter()
            .enumerate()
            .filter_map(|(node, &c)| (c == Some(id)).then_some(node))
            .collect())
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }
}

/// Two correlation matrices for one subject, guaranteed comparable: same
/// node count and same label order.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pub subject_id: String,
    pub condition_a: CorrelationMatrix,
    pub condition_b: CorrelationMatrix,
}

impl PairedSample {
    pub fn new(
        subject_id: impl Into<String>,
        condition_a: CorrelationMatrix,
        condition_b: CorrelationMatrix,
    ) -> Result<Self> {
        if condition_a.node_count() != condition_b.node_count() {
            return Err(Error::ConditionMismatch {
                message: format!(
                    "node counts differ: {} vs {}",
                    condition_a.node_count(),
                    condition_b.node_count()
                ),
            });
        }
        match (condition_a.labels(), condition_b.labels()) {
            (Some(a), Some(b)) => {
                if let Some(i) = (0..a.len()).find(|&i| a[i] != b[i]) {
                    return Err(Error::ConditionMismatch {
                        message: format!(
                            "node labels differ at index {i}: {:?} vs {:?}",
                            a[i], b[i]
                        ),
                    });
                }
            }
            (None, None) => {}
            _ => {
                return Err(Error::ConditionMismatch {
                    message: "one condition has node labels and the other does not".to_string(),
                });
            }
        }
        Ok(Self {
            subject_id: subject_id.into(),
            condition_a,
            condition_b,
        })
    }
}

/// Parity matrices for both conditions at one density target.
#[derive(Debug, Clone)]
pub struct PairedParity {
    pub target: DensityTarget,
    pub parity_a: ParityMatrix,
    pub parity_b: ParityMatrix,
    pub connected_a: bool,
    pub connected_b: bool,
}

/// Thresholds both conditions to each target's exact edge count and
/// computes both parity matrices per target. The shared building block for
/// global and cluster comparisons, exposed so callers needing both tables
/// pay for the matrices once.
pub fn paired_parity_sweep(
    sample: &PairedSample,
    targets: &[DensityTarget],
    base: LogBase,
) -> Result<Vec<PairedParity>> {
    let points_a = density_sweep(&sample.condition_a, targets)?;
    let points_b = density_sweep(&sample.condition_b, targets)?;
    points_a
        .into_iter()
        .zip(points_b)
        .map(|(a, b)| {
            debug_assert_eq!(a.graph.edge_count(), b.graph.edge_count());
            Ok(PairedParity {
                target: a.target,
                parity_a: parity_matrix(&a.graph, base)?,
                parity_b: parity_matrix(&b.graph, base)?,
                connected_a: a.connected,
                connected_b: b.connected,
            })
        })
        .collect()
}

/// Global average parity of both conditions at one density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRecord {
    pub mean_degree: f64,
    pub edge_count: usize,
    pub avg_parity_a: f64,
    pub avg_parity_b: f64,
    /// Always avg_parity_b - avg_parity_a.
    pub divergence: f64,
    pub connected_a: bool,
    pub connected_b: bool,
}

/// Per-density comparison of one paired sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepComparison {
    pub subject_id: String,
    pub records: Vec<DensityRecord>,
}

/// Compares the two conditions of one sample across density targets.
pub fn compare_paired(
    sample: &PairedSample,
    targets: &[DensityTarget],
    base: LogBase,
) -> Result<SweepComparison> {
    let records = paired_parity_sweep(sample, targets, base)?
        .iter()
        .map(density_record)
        .collect();
    Ok(SweepComparison {
        subject_id: sample.subject_id.clone(),
        records,
    })
}

fn density_record(pp: &PairedParity) -> DensityRecord {
    let avg_parity_a = average_parity(&pp.parity_a);
    let avg_parity_b = average_parity(&pp.parity_b);
    DensityRecord {
        mean_degree: pp.target.mean_degree(),
        edge_count: pp.target.edge_count(),
        avg_parity_a,
        avg_parity_b,
        divergence: avg_parity_b - avg_parity_a,
        connected_a: pp.connected_a,
        connected_b: pp.connected_b,
    }
}

/// Mean parity over all cross pairs between two disjoint clusters.
pub fn cluster_pair_parity(
    pm: &ParityMatrix,
    partition: &RegionPartition,
    a: &str,
    b: &str,
) -> Result<f64> {
    if a == b {
        return Err(Error::OverlappingClusters {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let members_a = partition.members(a)?;
    let members_b = partition.members(b)?;
    if members_a.is_empty() {
        return Err(Error::EmptyCluster {
            name: a.to_string(),
        });
    }
    if members_b.is_empty() {
        return Err(Error::EmptyCluster {
            name: b.to_string(),
        });
    }
    let n = pm.node_count();
    for &i in members_a.iter().chain(&members_b) {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    let mut sum = 0.0;
    for &i in &members_a {
        for &j in &members_b {
            sum += pm.value(i, j);
        }
    }
    Ok(sum / (members_a.len() * members_b.len()) as f64)
}

/// Cluster-pair parity of both conditions at one density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterDensityRecord {
    pub cluster_a: String,
    pub cluster_b: String,
    pub mean_degree: f64,
    pub value_a: f64,
    pub value_b: f64,
    /// Always value_b - value_a.
    pub divergence: f64,
}

/// Per-(cluster pair, density) comparison of one paired sample. Rows are
/// grouped by cluster pair in request order, densities in target order
/// within each group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSweepComparison {
    pub subject_id: String,
    pub records: Vec<ClusterDensityRecord>,
}

/// Cluster-level analogue of [`compare_paired`].
pub fn cluster_sweep_comparison(
    sample: &PairedSample,
    partition: &RegionPartition,
    cluster_pairs: &[(String, String)],
    targets: &[DensityTarget],
    base: LogBase,
) -> Result<ClusterSweepComparison> {
    let sweep = paired_parity_sweep(sample, targets, base)?;
    let mut records = Vec::with_capacity(cluster_pairs.len() * sweep.len());
    for (a, b) in cluster_pairs {
        for pp in &sweep {
            let value_a = cluster_pair_parity(&pp.parity_a, partition, a, b)?;
            let value_b = cluster_pair_parity(&pp.parity_b, partition, a, b)?;
            records.push(ClusterDensityRecord {
                cluster_a: a.clone(),
                cluster_b: b.clone(),
                mean_degree: pp.target.mean_degree(),
                value_a,
                value_b,
                divergence: value_b - value_a,
            });
        }
    }
    Ok(ClusterSweepComparison {
        subject_id: sample.subject_id.clone(),
        records,
    })
}

/// Parity summary of a single condition at one density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub mean_degree: f64,
    pub edge_count: usize,
    pub realized_mean_degree: f64,
    pub average_parity: f64,
    pub min_parity: f64,
    pub max_parity: f64,
    pub connected: bool,
}

/// Single-condition density sweep: average (plus min/max) parity per
/// target.
pub fn parity_sweep(
    cm: &CorrelationMatrix,
    targets: &[DensityTarget],
    base: LogBase,
) -> Result<Vec<SweepPoint>> {
    density_sweep(cm, targets)?
        .into_iter()
        .map(|point| {
            let pm = parity_matrix(&point.graph, base)?;
            Ok(SweepPoint {
                mean_degree: point.target.mean_degree(),
                edge_count: point.target.edge_count(),
                realized_mean_degree: point.graph.mean_degree(),
                average_parity: average_parity(&pm),
                min_parity: pm.min_value(),
                max_parity: pm.max_value(),
                connected: point.connected,
            })
        })
        .collect()
}

/// One subject's divergence aggregated across densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectDivergence {
    pub subject_id: String,
    pub mean_divergence: f64,
    pub median_divergence: f64,
    /// Strictly positive mean divergence; zero does not count.
    pub positive: bool,
}

/// How many subjects diverge positively at one shared density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityBreakdown {
    pub mean_degree: f64,
    pub positive_count: usize,
    pub subject_count: usize,
    pub fraction_positive: f64,
}

/// Cohort-level sign summary for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignConsistency {
    pub subjects: Vec<SubjectDivergence>,
    pub positive_count: usize,
    pub subject_count: usize,
    pub fraction_positive: f64,
    pub per_density: Vec<DensityBreakdown>,
}

/// Sign consistency of the global average-parity divergence.
pub fn sign_consistency(cohort: &[SweepComparison]) -> Result<SignConsistency> {
    let series: Vec<(String, Vec<(f64, f64)>)> = cohort
        .iter()
        .map(|c| {
            (
                c.subject_id.clone(),
                c.records
                    .iter()
                    .map(|r| (r.mean_degree, r.divergence))
                    .collect(),
            )
        })
        .collect();
    consistency_from(series)
}

/// Sign consistency per cluster pair, in first-seen pair order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSignConsistency {
    pub cluster_a: String,
    pub cluster_b: String,
    pub consistency: SignConsistency,
}

pub fn cluster_sign_consistency(
    cohort: &[ClusterSweepComparison],
) -> Result<Vec<ClusterSignConsistency>> {
    if cohort.is_empty() {
        return Err(Error::EmptyCohort);
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    for c in cohort {
        for r in &c.records {
            let key = (r.cluster_a.clone(), r.cluster_b.clone());
            if !pairs.contains(&key) {
                pairs.push(key);
            }
        }
    }
    pairs
        .into_iter()
        .map(|(a, b)| {
            let series: Vec<(String, Vec<(f64, f64)>)> = cohort
                .iter()
                .map(|c| {
                    (
                        c.subject_id.clone(),
                        c.records
                            .iter()
                            .filter(|r| r.cluster_a == a && r.cluster_b == b)
                            .map(|r| (r.mean_degree, r.divergence))
                            .collect(),
                    )
                })
                .collect();
            Ok(ClusterSignConsistency {
                cluster_a: a,
                cluster_b: b,
                consistency: consistency_from(series)?,
            })
        })
        .collect()
}

fn consistency_from(series: Vec<(String, Vec<(f64, f64)>)>) -> Result<SignConsistency> {
    if series.is_empty() {
        return Err(Error::EmptyCohort);
    }
    let mut subjects = Vec::with_capacity(series.len());
    // Densities in first-seen order across the cohort.
    let mut densities: Vec<f64> = Vec::new();
    let mut per_density: Vec<(usize, usize)> = Vec::new();
    for (subject_id, rows) in &series {
        if rows.is_empty() {
            return Err(Error::NoTargets);
        }
        let mut values: Vec<f64> = rows.iter().map(|&(_, d)| d).collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        values.sort_by(f64::total_cmp);
        let mid = values.len() / 2;
        let median = if values.len() % 2 == 1 {
            values[mid]
        } else {
            (values[mid - 1] + values[mid]) / 2.0
        };
        subjects.push(SubjectDivergence {
            subject_id: subject_id.clone(),
            mean_divergence: mean,
            median_divergence: median,
            positive: mean > 0.0,
        });
        for &(mean_degree, divergence) in rows {
            let slot = match densities.iter().position(|&d| d == mean_degree) {
                Some(i) => i,
                None => {
                    densities.push(mean_degree);
                    per_density.push((0, 0));
                    densities.len() - 1
                }
            };
            per_density[slot].1 += 1;
            if divergence > 0.0 {
                per_density[slot].0 += 1;
            }
        }
    }
    let positive_count = subjects.iter().filter(|s| s.positive).count();
    let subject_count = subjects.len();
    Ok(SignConsistency {
        positive_count,
        subject_count,
        fraction_positive: positive_count as f64 / subject_count as f64,
        per_density: densities
            .into_iter()
            .zip(per_density)
            .map(|(mean_degree, (positive, total))| DensityBreakdown {
                mean_degree,
                positive_count: positive,
                subject_count: total,
                fraction_positive: positive as f64 / total as f64,
            })
            .collect(),
        subjects,
    })
}
