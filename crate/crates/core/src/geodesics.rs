//! Shortest-path (geodesic) distances over unweighted graphs.
//!
//! Distances are hop counts from breadth-first search, stored densely as
//! `u32` with [`UNREACHABLE`] marking node pairs in different components.

use crate::graph::Graph;
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sentinel distance for pairs with no connecting path.
pub const UNREACHABLE: u32 = u32::MAX;

/// Dense symmetric matrix of geodesic distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    /// Row-major n*n entries; entry (i, i) is 0.
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Distance between `i` and `j` in hops, or [`UNREACHABLE`].
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    /// Row of distances from node `i`.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest finite off-diagonal distance; 0 for a single node or an
    /// edgeless graph (no finite off-diagonal entries).
    pub fn diameter(&self) -> u32 {
        let mut max = 0;
        for i in 0..self.n {
            for &d in self.row(i) {
                if d != UNREACHABLE && d > max {
                    max = d;
                }
            }
        }
        max
    }

    /// True if every off-diagonal entry is finite.
    pub fn fully_connected(&self) -> bool {
        self.data.iter().all(|&d| d != UNREACHABLE)
    }
}

/// BFS hop counts from `source` to every node.
pub fn bfs_distances(graph: &Graph, source: usize) -> Result<Vec<u32>> {
    let n = graph.node_count();
    if source >= n {
        return Err(Error::IndexOutOfRange { index: source, n });
    }
    Ok(bfs_row(graph, source))
}

fn bfs_row(graph: &Graph, source: usize) -> Vec<u32> {
    let n = graph.node_count();
    let mut dist = vec![UNREACHABLE; n];
    dist[source] = 0;
    // A plain Vec works as the BFS queue: nodes are pushed once and the
    // scan index only moves forward.
    let mut queue = Vec::with_capacity(n);
    queue.push(source as u32);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        let next = dist[u] + 1;
        for &v in graph.neighbors(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = next;
                queue.push(v);
            }
        }
    }
    dist
}

/// All-pairs geodesic distances, one BFS per node.
///
/// Rows are independent, so with the `parallel` feature they are computed
/// on the rayon pool; the result is identical either way.
pub fn all_pairs_distances(graph: &Graph) -> DistanceMatrix {
    let n = graph.node_count();
    let mut data = vec![UNREACHABLE; n * n];

    #[cfg(feature = "parallel")]
    data.par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| row.copy_from_slice(&bfs_row(graph, i)));

    #[cfg(not(feature = "parallel"))]
    for (i, row) in data.chunks_mut(n).enumerate() {
        row.copy_from_slice(&bfs_row(graph, i));
    }

    DistanceMatrix { n, data }
}
