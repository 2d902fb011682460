//! Slow reference implementations used only by tests.
//!
//! Everything here is written as a direct transcription of the defining
//! formulas, sharing no code with the production paths: distances come from
//! Floyd-Warshall instead of BFS, and parity is a literal three-level loop
//! over shell radii. Tests assert the fast paths agree with these.

use crate::graph::Graph;
use crate::parity::LogBase;

/// All-pairs distances by Floyd-Warshall; `None` marks unreachable pairs.
pub fn floyd_warshall(graph: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = graph.node_count();
    let mut dist = vec![vec![None; n]; n];
    for i in 0..n {
        dist[i][i] = Some(0);
    }
    for (i, j) in graph.edges() {
        dist[i][j] = Some(1);
        dist[j][i] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k] else { continue };
            for j in 0..n {
                let Some(dkj) = dist[k][j] else { continue };
                let through = dik + dkj;
                if dist[i][j].is_none_or(|d| through < d) {
                    dist[i][j] = Some(through);
                }
            }
        }
    }
    dist
}

/// Largest finite off-diagonal distance.
pub fn naive_diameter(dist: &[Vec<Option<u64>>]) -> u64 {
    dist.iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .unwrap_or(0)
}

/// p_i(r): fraction of the other N-1 nodes at distance exactly r from i.
pub fn naive_node_shell(dist: &[Vec<Option<u64>>], i: usize, r: u64) -> f64 {
    let n = dist.len();
    let mut count = 0usize;
    for k in 0..n {
        if k != i && dist[i][k] == Some(r) {
            count += 1;
        }
    }
    count as f64 / (n - 1) as f64
}

/// p_ij(r): fraction of the other N-2 nodes at distance exactly r from
/// both i and j.
pub fn naive_pair_shell(dist: &[Vec<Option<u64>>], i: usize, j: usize, r: u64) -> f64 {
    let n = dist.len();
    let mut count = 0usize;
    for k in 0..n {
        if k != i && k != j && dist[i][k] == Some(r) && dist[j][k] == Some(r) {
            count += 1;
        }
    }
    count as f64 / (n - 2) as f64
}

/// Information parity of the pair (i, j): the sum over radii
/// 1..=r_max of p_ij(r) * log(p_ij(r) / (p_i(r) p_j(r))), with empty joint
/// shells contributing zero.
pub fn naive_information_parity(
    dist: &[Vec<Option<u64>>],
    i: usize,
    j: usize,
    r_max: u64,
    base: LogBase,
) -> f64 {
    let mut total = 0.0;
    for r in 1..=r_max {
        let joint = naive_pair_shell(dist, i, j, r);
        if joint == 0.0 {
            continue;
        }
        let pi = naive_node_shell(dist, i, r);
        let pj = naive_node_shell(dist, j, r);
        let ratio = joint / (pi * pj);
        // Deliberately a different floating-point route than the fast path.
        let log = match base {
            LogBase::Bits => ratio.ln() / std::f64::consts::LN_2,
            LogBase::Nats => ratio.ln(),
        };
        total += joint * log;
    }
    total
}

/// Full parity matrix from scratch, radii truncated at the graph diameter.
pub fn naive_parity_matrix(graph: &Graph, base: LogBase) -> Vec<Vec<f64>> {
    let n = graph.node_count();
    let dist = floyd_warshall(graph);
    let r_max = naive_diameter(&dist);
    let mut out = vec![vec![f64::NAN; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out[i][j] = naive_information_parity(&dist, i, j, r_max, base);
            }
        }
    }
    out
}

/// Mean of the off-diagonal upper triangle.
pub fn naive_average_parity(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += matrix[i][j];
            pairs += 1;
        }
    }
    sum / pairs as f64
}
