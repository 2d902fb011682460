//! Graph construction from correlation matrices.
//!
//! Networks are built by thresholding the absolute value of pairwise
//! correlations, either at a fixed value or, for comparisons that must hold
//! density fixed, by keeping exactly the top M pairs. The top-M route is
//! the one that guarantees two conditions end up with identical edge
//! counts even when correlations tie at the cut.

use crate::graph::Graph;
use crate::{Error, Result};

const SYMMETRY_TOLERANCE: f64 = 1e-9;
const MAGNITUDE_TOLERANCE: f64 = 1e-9;

/// A symmetric correlation matrix with unit diagonal.
///
/// Ingestion checks symmetry and entry magnitude to 1e-9, then stores the
/// exactly symmetrized average (C + C^T)/2 so that downstream pair ranking
/// never depends on which triangle a value came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    n: usize,
    /// Row-major, exactly symmetric, diagonal 1.0.
    data: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl CorrelationMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    n,
                });
            }
        }
        for i in 0..n {
            let diag = rows[i][i];
            // NaN must fail every check, hence the explicit tests.
            if diag.is_nan() || (diag - 1.0).abs() > MAGNITUDE_TOLERANCE {
                return Err(Error::CorrelationDiagonal {
                    index: i,
                    value: diag,
                });
            }
            for j in (i + 1)..n {
                let a = rows[i][j];
                let b = rows[j][i];
                if a.is_nan() || a.abs() > 1.0 + MAGNITUDE_TOLERANCE {
                    return Err(Error::CorrelationOutOfRange { i, j, value: a });
                }
                if b.is_nan() || b.abs() > 1.0 + MAGNITUDE_TOLERANCE {
                    return Err(Error::CorrelationOutOfRange { i: j, j: i, value: b });
                }
                if (a - b).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::AsymmetricCorrelation { i, j, a, b });
                }
            }
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
            for j in (i + 1)..n {
                let value = (rows[i][j] + rows[j][i]) / 2.0;
                data[i * n + j] = value;
                data[j * n + i] = value;
            }
        }
        Ok(Self {
            n,
            data,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                actual: labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// All unordered pairs sorted by |c| descending, ties broken by
    /// lexicographic (i, j) ascending. This single order drives both
    /// single-density thresholding and sweeps, which is what makes sweep
    /// edge sets nested.
    fn ranked_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .collect();
        pairs.sort_by(|&(ai, aj), &(bi, bj)| {
            self.value(bi, bj)
                .abs()
                .total_cmp(&self.value(ai, aj).abs())
                .then((ai, aj).cmp(&(bi, bj)))
        });
        pairs
    }

    fn carry_labels(&self, graph: Graph) -> Graph {
        match &self.labels {
            Some(labels) => graph
                .with_labels(labels.clone())
                .expect("labels already validated against n"),
            None => graph,
        }
    }
}

/// An edge-count target expressed as a mean degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityTarget {
    mean_degree: f64,
    edge_count: usize,
}

impl DensityTarget {
    /// M = round(mean_degree * n / 2), required to land in [1, n(n-1)/2].
    pub fn from_mean_degree(mean_degree: f64, n: usize) -> Result<Self> {
        if !(mean_degree.is_finite() && mean_degree > 0.0) {
            return Err(Error::InvalidMeanDegree { mean_degree });
        }
        let edge_count = (mean_degree * n as f64 / 2.0).round() as usize;
        let max = n * n.saturating_sub(1) / 2;
        if edge_count < 1 || edge_count > max {
            return Err(Error::EdgeCountOutOfRange {
                edge_count,
                max,
                n,
            });
        }
        Ok(Self {
            mean_degree,
            edge_count,
        })
    }

    pub fn from_edge_count(edge_count: usize, n: usize) -> Result<Self> {
        let max = n * n.saturating_sub(1) / 2;
        if edge_count < 1 || edge_count > max {
            return Err(Error::EdgeCountOutOfRange {
                edge_count,
                max,
                n,
            });
        }
        Ok(Self {
            mean_degree: 2.0 * edge_count as f64 / n as f64,
            edge_count,
        })
    }

    /// The requested mean degree, as given (the realized value is
    /// 2 * edge_count / n and may differ by rounding).
    pub fn mean_degree(&self) -> f64 {
        self.mean_degree
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// One entry of a density sweep.
#[derive(Debug, Clone)]
pub struct DensityPoint {
    pub target: DensityTarget,
    pub graph: Graph,
    pub connected: bool,
}

/// Sample Pearson correlation over node time series (one sequence per
/// node, equal lengths, at least two samples).
pub fn pearson_correlation(series: &[Vec<f64>]) -> Result<CorrelationMatrix> {
    let n = series.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let len = series[0].len();
    for (index, s) in series.iter().enumerate() {
        if s.len() != len {
            return Err(Error::SeriesLengthMismatch {
                index,
                expected: len,
                actual: s.len(),
            });
        }
    }
    if len < 2 {
        return Err(Error::TooFewSamples { actual: len });
    }

    // Center each series once; reuse across pairs.
    let mut centered = Vec::with_capacity(n);
    let mut sum_squares = Vec::with_capacity(n);
    for (index, s) in series.iter().enumerate() {
        let mean = s.iter().sum::<f64>() / len as f64;
        let c: Vec<f64> = s.iter().map(|x| x - mean).collect();
        let sq: f64 = c.iter().map(|x| x * x).sum();
        if sq == 0.0 {
            return Err(Error::ZeroVariance { index });
        }
        centered.push(c);
        sum_squares.push(sq);
    }

    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = 1.0;
        for j in (i + 1)..n {
            let dot: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(x, y)| x * y)
                .sum();
            // Clamp the rounding overshoot so |c| <= 1 holds exactly.
            let c = (dot / (sum_squares[i] * sum_squares[j]).sqrt()).clamp(-1.0, 1.0);
            rows[i][j] = c;
            rows[j][i] = c;
        }
    }
    CorrelationMatrix::new(rows)
}

/// Edge (i, j) iff |c_ij| > tau (strictly).
pub fn threshold_by_value(cm: &CorrelationMatrix, tau: f64) -> Result<Graph> {
    let n = cm.node_count();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| cm.value(i, j).abs() > tau)
        .collect();
    Ok(cm.carry_labels(Graph::from_edge_list(&edges, n)?))
}

/// Exactly `target.edge_count` edges: the top-M pairs by |c|, ties at the
/// cut resolved by lexicographic (i, j).
pub fn threshold_to_density(cm: &CorrelationMatrix, target: DensityTarget) -> Result<Graph> {
    let n = cm.node_count();
    let max = n * n.saturating_sub(1) / 2;
    let m = target.edge_count();
    if m < 1 || m > max {
        return Err(Error::EdgeCountOutOfRange {
            edge_count: m,
            max,
            n,
        });
    }
    let ranked = cm.ranked_pairs();
    Ok(cm.carry_labels(Graph::from_edge_list(&ranked[..m], n)?))
}

/// One graph per target, all cut from a single pair ranking, so a smaller
/// edge count always yields a subset of a larger one.
pub fn density_sweep(
    cm: &CorrelationMatrix,
    targets: &[DensityTarget],
) -> Result<Vec<DensityPoint>> {
    if targets.is_empty() {
        return Err(Error::NoTargets);
    }
    let n = cm.node_count();
    let max = n * n.saturating_sub(1) / 2;
    let ranked = cm.ranked_pairs();
    targets
        .iter()
        .map(|&target| {
            let m = target.edge_count();
            if m < 1 || m > max {
                return Err(Error::EdgeCountOutOfRange {
                    edge_count: m,
                    max,
                    n,
                });
            }
            let graph = cm.carry_labels(Graph::from_edge_list(&ranked[..m], n)?);
            let connected = graph.is_connected();
            Ok(DensityPoint {
                target,
                graph,
                connected,
            })
        })
        .collect()
}
