//! Deterministic graph families and seeded random generators.
//!
//! Every random output is a pure function of (parameters, seed). The
//! generator algorithm is pinned: a ChaCha12 stream seeded from the 64-bit
//! seed, with the u64-to-sample conversions implemented here rather than
//! borrowed from a distributions crate, so frozen test vectors survive
//! dependency upgrades. Output metadata records [`GENERATOR_ALGORITHM`].

use crate::builder::CorrelationMatrix;
use crate::graph::Graph;
use crate::{Error, Result};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

/// Identifier for the pinned RNG + conversion scheme, recorded in outputs.
pub const GENERATOR_ALGORITHM: &str = "chacha12";

/// A 64-bit seed. Same seed, parameters, and algorithm: same output, bit
/// for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed(pub u64);

fn rng_from(seed: Seed) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed.0)
}

/// Uniform f64 in [0, 1): the top 53 bits of one u64 draw.
fn unit_f64(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform u64 in [0, bound) by rejection, free of modulo bias.
fn uniform_below(rng: &mut ChaCha12Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    // Reject draws from the final partial copy of [0, bound).
    let remainder = ((u64::MAX % bound) + 1) % bound;
    let zone = u64::MAX - remainder;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % bound;
        }
    }
}

/// `k` distinct indices from 0..n by partial Fisher-Yates, in draw order.
fn sample_k_of_n(rng: &mut ChaCha12Rng, k: usize, n: usize) -> Vec<usize> {
    debug_assert!(k <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for t in 0..k {
        let pick = t + uniform_below(rng, (n - t) as u64) as usize;
        pool.swap(t, pick);
    }
    pool.truncate(k);
    pool
}

fn require_min_nodes(n: usize, required: usize) -> Result<()> {
    if n < required {
        return Err(Error::TooFewNodes {
            required,
            actual: n,
        });
    }
    Ok(())
}

/// K_n: every pair connected.
pub fn complete(n: usize) -> Result<Graph> {
    require_min_nodes(n, 1)?;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    Graph::from_edge_list(&edges, n)
}

/// C_n: nodes in a ring. C_1 is a bare node and C_2 a single edge.
pub fn cycle(n: usize) -> Result<Graph> {
    require_min_nodes(n, 1)?;
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(&edges, n)
}

/// P_n: a simple path 0-1-...-(n-1).
pub fn path(n: usize) -> Result<Graph> {
    require_min_nodes(n, 1)?;
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(&edges, n)
}

/// S_n: node 0 is the hub, nodes 1..n are leaves.
pub fn star(n: usize) -> Result<Graph> {
    require_min_nodes(n, 2)?;
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edge_list(&edges, n)
}

/// Erdos-Renyi G(n, p): each unordered pair independently with probability
/// `p`, pairs visited in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    require_min_nodes(n, 1)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability { p });
    }
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if unit_f64(&mut rng) < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(&edges, n)
}

/// Removes floor(fraction * |E|) uniformly chosen edges and replaces them
/// with the same number of uniformly chosen non-edges of the input graph.
/// Node and edge counts are preserved; labels carry over.
pub fn rewire(graph: &Graph, fraction: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&fraction) || fraction.is_nan() {
        return Err(Error::InvalidFraction { fraction });
    }
    let edge_count = graph.edge_count();
    let k = (fraction * edge_count as f64).floor() as usize;
    if k == 0 {
        return Ok(graph.clone());
    }
    let n = graph.node_count();
    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !graph.contains_edge(i, j))
        .collect();
    if k > non_edges.len() {
        return Err(Error::NotEnoughNonEdges {
            requested: k,
            available: non_edges.len(),
        });
    }

    let mut rng = rng_from(seed);
    let mut drop = vec![false; edge_count];
    for index in sample_k_of_n(&mut rng, k, edge_count) {
        drop[index] = true;
    }
    let mut edges: Vec<(usize, usize)> = graph
        .edges()
        .enumerate()
        .filter_map(|(index, e)| (!drop[index]).then_some(e))
        .collect();
    for index in sample_k_of_n(&mut rng, k, non_edges.len()) {
        edges.push(non_edges[index]);
    }
    let rewired = Graph::from_edge_list(&edges, n)?;
    Ok(match graph.labels() {
        Some(labels) => rewired
            .with_labels(labels.to_vec())
            .expect("label count is unchanged"),
        None => rewired,
    })
}

/// Block-structured correlation matrix: `within + noise` inside a block,
/// `between + noise` across blocks, noise uniform in [-jitter, jitter].
/// Blocks are contiguous index ranges with the given sizes.
pub fn block_correlation(
    n: usize,
    block_sizes: &[usize],
    within: f64,
    between: f64,
    jitter: f64,
    seed: Seed,
) -> Result<CorrelationMatrix> {
    require_min_nodes(n, 1)?;
    let sum: usize = block_sizes.iter().sum();
    if sum != n || block_sizes.contains(&0) {
        return Err(Error::BadBlockSizes { sum, n });
    }
    if !(-1.0..=1.0).contains(&between) || !(-1.0..=1.0).contains(&within) || between > within {
        return Err(Error::BadBlockParameters {
            message: format!(
                "need -1 <= between <= within <= 1, got between={between}, within={within}"
            ),
        });
    }
    if jitter.is_nan() || jitter < 0.0 || within + jitter > 1.0 || between - jitter < -1.0 {
        return Err(Error::BadBlockParameters {
            message: format!(
                "jitter {jitter} pushes entries outside [-1, 1] for within={within}, between={between}"
            ),
        });
    }

    let mut block_of = vec![0usize; n];
    let mut next = 0;
    for (b, &size) in block_sizes.iter().enumerate() {
        for _ in 0..size {
            block_of[next] = b;
            next += 1;
        }
    }

    let mut rng = rng_from(seed);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = 1.0;
        for j in (i + 1)..n {
            let base = if block_of[i] == block_of[j] {
                within
            } else {
                between
            };
            let noise = (2.0 * unit_f64(&mut rng) - 1.0) * jitter;
            let value = base + noise;
            rows[i][j] = value;
            rows[j][i] = value;
        }
    }
    CorrelationMatrix::new(rows)
}
