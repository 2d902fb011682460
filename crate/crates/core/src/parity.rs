//! Information parity between node pairs, and the radial shell profiles
//! it is built from.
//!
//! For a node i, the shell profile gives the probability p_i(r) that one of
//! the other N-1 nodes sits at geodesic distance exactly r. For a pair
//! (i, j), the joint profile gives the probability p_ij(r) that one of the
//! other N-2 nodes sits at distance r from both. Information parity is
//!
//! ```text
//! I_ij = sum over r of  p_ij(r) * log( p_ij(r) / (p_i(r) p_j(r)) )
//! ```
//!
//! with empty joint shells contributing zero. A node in a joint shell also
//! lies in both single shells, so the ratio is never 0/0 when p_ij(r) > 0.
//! The sum is not a KL divergence (p_i * p_j is not a marginalization of
//! p_ij), so values can be negative; nothing here clips them.
//!
//! On disconnected graphs, unreachable nodes contribute to no shell and the
//! normalizations stay N-1 and N-2, so profiles may sum to less than one.

use crate::geodesics::{DistanceMatrix, UNREACHABLE};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Logarithm base for parity and entropy values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    /// Base-2 logarithms; values are in bits. The default for all outputs.
    #[default]
    Bits,
    /// Natural logarithms; values are in nats.
    Nats,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
        }
    }

    /// Name used in serialized metadata.
    pub fn name(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "bits" => Some(LogBase::Bits),
            "nats" => Some(LogBase::Nats),
            _ => None,
        }
    }
}

/// Shell masses of a node or pair, indexed by radius 1..=r_max.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// mass[r-1] is the shell probability at radius r.
    mass: Vec<f64>,
    /// N-1 for node profiles, N-2 for pair profiles.
    normalization_base: usize,
}

impl RadialProfile {
    /// Number of radii the profile spans.
    pub fn r_max(&self) -> usize {
        self.mass.len()
    }

    /// Mass at radius `r` (1-based). Radii beyond `r_max` hold no mass.
    pub fn mass_at(&self, r: usize) -> f64 {
        assert!(r >= 1, "shell radii start at 1");
        self.mass.get(r - 1).copied().unwrap_or(0.0)
    }

    /// All masses, index 0 corresponding to radius 1.
    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// The count the shells were divided by (N-1 or N-2).
    pub fn normalization_base(&self) -> usize {
        self.normalization_base
    }

    /// Sum of all shell masses; 1 exactly when every counted node is
    /// reachable, less otherwise.
    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }
}

/// Symmetric matrix of pairwise information parity. The diagonal is
/// undefined and stored as NaN; it is excluded from every aggregate.
#[derive(Debug, Clone)]
pub struct ParityMatrix {
    n: usize,
    /// Row-major n*n values, NaN on the diagonal.
    data: Vec<f64>,
    log_base: LogBase,
}

impl ParityMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    /// Parity of the pair (i, j); NaN when i = j.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// All unordered pairs (i, j, value) with i < j.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).map(move |j| (i, j, self.value(i, j)))
        })
    }

    /// Smallest off-diagonal value. Parity is not clipped, so this can be
    /// negative; reports surface it for that reason.
    pub fn min_value(&self) -> f64 {
        self.pairs().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min)
    }

    /// Largest off-diagonal value.
    pub fn max_value(&self) -> f64 {
        self.pairs()
            .map(|(_, _, v)| v)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Rebuilds a matrix from parsed rows, e.g. read back from disk. The
    /// diagonal entries of `rows` are ignored and stored as NaN. Symmetry
    /// is not re-checked; the source is trusted.
    pub fn from_rows(rows: Vec<Vec<f64>>, log_base: LogBase) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::TooFewNodes {
                required: 3,
                actual: n,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    n,
                });
            }
            data.extend_from_slice(values);
        }
        for i in 0..n {
            data[i * n + i] = f64::NAN;
        }
        Ok(Self {
            n,
            data,
            log_base,
        })
    }
}

/// Counts of nodes at each distance 1..=r_max from `i`, excluding `i`
/// itself and unreachable nodes.
fn shell_counts(dm: &DistanceMatrix, i: usize, r_max: usize) -> Vec<u32> {
    let mut counts = vec![0u32; r_max];
    for (k, &d) in dm.row(i).iter().enumerate() {
        if k != i && d != UNREACHABLE && (d as usize) <= r_max {
            counts[d as usize - 1] += 1;
        }
    }
    counts
}

/// Counts of nodes at the same distance 1..=r_max from both `i` and `j`,
/// excluding the pair itself.
fn joint_shell_counts(dm: &DistanceMatrix, i: usize, j: usize, r_max: usize) -> Vec<u32> {
    let mut counts = vec![0u32; r_max];
    let row_i = dm.row(i);
    let row_j = dm.row(j);
    for k in 0..dm.node_count() {
        if k == i || k == j {
            continue;
        }
        let d = row_i[k];
        if d != UNREACHABLE && d == row_j[k] && (d as usize) <= r_max {
            counts[d as usize - 1] += 1;
        }
    }
    counts
}

/// The parity sum over shells, from integer counts. Both the single-pair
/// entry point and the full-matrix path funnel through this function with
/// identical counts, so their results agree bit for bit.
fn parity_from_counts(
    joint: &[u32],
    counts_i: &[u32],
    counts_j: &[u32],
    n: usize,
    base: LogBase,
) -> f64 {
    let single_norm = (n - 1) as f64;
    let joint_norm = (n - 2) as f64;
    let mut total = 0.0;
    for (r, &jc) in joint.iter().enumerate() {
        if jc == 0 {
            continue;
        }
        let p_joint = jc as f64 / joint_norm;
        let p_i = counts_i[r] as f64 / single_norm;
        let p_j = counts_j[r] as f64 / single_norm;
        total += p_joint * base.log(p_joint / (p_i * p_j));
    }
    total
}

fn pair_parity_truncated(
    dm: &DistanceMatrix,
    i: usize,
    j: usize,
    r_max: usize,
    base: LogBase,
) -> f64 {
    let counts_i = shell_counts(dm, i, r_max);
    let counts_j = shell_counts(dm, j, r_max);
    let joint = joint_shell_counts(dm, i, j, r_max);
    parity_from_counts(&joint, &counts_i, &counts_j, dm.node_count(), base)
}

/// Shell profile of node `i`: mass[r] = |{k != i : D_ik = r}| / (N-1).
pub fn node_profile(dm: &DistanceMatrix, i: usize) -> Result<RadialProfile> {
    let n = dm.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            actual: n,
        });
    }
    let r_max = dm.diameter() as usize;
    let norm = (n - 1) as f64;
    Ok(RadialProfile {
        mass: shell_counts(dm, i, r_max)
            .into_iter()
            .map(|c| c as f64 / norm)
            .collect(),
        normalization_base: n - 1,
    })
}

/// Joint shell profile of the pair (i, j):
/// mass[r] = |{k != i,j : D_ik = r = D_jk}| / (N-2).
pub fn pair_profile(dm: &DistanceMatrix, i: usize, j: usize) -> Result<RadialProfile> {
    let n = dm.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes {
            required: 3,
            actual: n,
        });
    }
    if i == j {
        return Err(Error::SelfPair { index: i });
    }
    let r_max = dm.diameter() as usize;
    let norm = (n - 2) as f64;
    Ok(RadialProfile {
        mass: joint_shell_counts(dm, i, j, r_max)
            .into_iter()
            .map(|c| c as f64 / norm)
            .collect(),
        normalization_base: n - 2,
    })
}

/// Information parity of one pair, with shells summed up to the graph
/// diameter. Shells past either node's eccentricity hold no joint mass, so
/// the global cutoff changes nothing (see the truncation test below).
pub fn information_parity(
    dm: &DistanceMatrix,
    i: usize,
    j: usize,
    base: LogBase,
) -> Result<f64> {
    let n = dm.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes {
            required: 3,
            actual: n,
        });
    }
    if i == j {
        return Err(Error::SelfPair { index: i });
    }
    Ok(pair_parity_truncated(dm, i, j, dm.diameter() as usize, base))
}

/// Information parity over all unordered pairs, from a shared distance
/// matrix. Single-node shell counts are computed once per node and reused
/// across pairs; each pair's value is independent, so with the `parallel`
/// feature pairs are mapped on the rayon pool. Output is identical either
/// way (collection preserves pair order).
pub fn parity_matrix_from_distances(
    dm: &DistanceMatrix,
    base: LogBase,
) -> Result<ParityMatrix> {
    let n = dm.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes {
            required: 3,
            actual: n,
        });
    }
    let r_max = dm.diameter() as usize;
    let node_counts: Vec<Vec<u32>> = (0..n).map(|i| shell_counts(dm, i, r_max)).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();

    let compute = |&(i, j): &(usize, usize)| {
        let joint = joint_shell_counts(dm, i, j, r_max);
        parity_from_counts(&joint, &node_counts[i], &node_counts[j], n, base)
    };

    #[cfg(feature = "parallel")]
    let values: Vec<f64> = pairs.par_iter().map(compute).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = pairs.iter().map(compute).collect();

    let mut data = vec![f64::NAN; n * n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        data[i * n + j] = v;
        data[j * n + i] = v;
    }
    Ok(ParityMatrix {
        n,
        data,
        log_base: base,
    })
}

/// Convenience wrapper: distances then parity in one call.
pub fn parity_matrix(graph: &crate::graph::Graph, base: LogBase) -> Result<ParityMatrix> {
    let n = graph.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes {
            required: 3,
            actual: n,
        });
    }
    parity_matrix_from_distances(&crate::geodesics::all_pairs_distances(graph), base)
}

/// Mean parity over all unordered pairs.
pub fn average_parity(pm: &ParityMatrix) -> f64 {
    let pair_count = pm.n * (pm.n - 1) / 2;
    pm.pairs().map(|(_, _, v)| v).sum::<f64>() / pair_count as f64
}

/// Shannon entropy of a shell profile, over its stored (possibly
/// sub-normalized) masses, with empty shells contributing zero.
pub fn geodesic_entropy(profile: &RadialProfile, base: LogBase) -> f64 {
    let mut h = 0.0;
    for &p in profile.masses() {
        if p > 0.0 {
            h -= p * base.log(p);
        }
    }
    h
}
