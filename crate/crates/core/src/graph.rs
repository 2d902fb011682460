//! Undirected, unweighted networks over dense 0-based node indices.
//!
//! [`Graph`] is immutable after construction: edges are deduplicated,
//! self-loop-free, and stored canonically with the smaller endpoint first.
//! String labels are optional metadata; all computation is index-based.

use crate::{Error, Result};
use std::collections::VecDeque;

/// An undirected, unweighted network with `n` labeled nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical edges (i, j) with i < j, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbor lists, one per node.
    adjacency: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed and self-loops dropped.
    pub fn from_edge_list(pairs: &[(usize, usize)], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::IndexOutOfRange { index: a, n });
            }
            if b >= n {
                return Err(Error::IndexOutOfRange { index: b, n });
            }
            if a == b {
                continue;
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            edges.push((i as u32, j as u32));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(edges, n))
    }

    /// Builds a graph from a square 0/1 adjacency matrix.
    pub fn from_adjacency(matrix: &[Vec<u8>]) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    n,
                });
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            let diag = matrix[i][i];
            if diag != 0 {
                return Err(Error::NonzeroDiagonal { index: i });
            }
            for j in (i + 1)..n {
                let value = matrix[i][j];
                if value > 1 {
                    return Err(Error::AdjacencyEntry { i, j, value });
                }
                if matrix[j][i] != value {
                    return Err(Error::AsymmetricAdjacency { i, j });
                }
                if value == 1 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Ok(Self::from_canonical(edges, n))
    }

    /// Internal constructor over already-canonical, sorted, deduplicated edges.
    fn from_canonical(edges: Vec<(u32, u32)>, n: usize) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i as usize].push(j);
            adjacency[j as usize].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
            labels: None,
        }
    }

    /// Attaches node labels; there must be exactly one unique label per node.
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

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges, each with the smaller endpoint first, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(i, j)| (i as usize, j as usize))
    }

    /// Sorted neighbors of `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n || b >= self.n {
            return false;
        }
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of node `i`, falling back to the index when unlabeled.
    pub fn label_of(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    /// 2|E| / N.
    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n as f64
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().component_sizes.len() == 1
    }

    /// Connected components via BFS. Component ids are contiguous from 0,
    /// ordered by size descending with ties broken by the smallest node
    /// index contained in the component.
    pub fn connected_components(&self) -> ComponentPartition {
        let mut raw_id = vec![usize::MAX; self.n];
        // (size, smallest contained node, raw id)
        let mut components: Vec<(usize, usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if raw_id[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut size = 0usize;
            raw_id[start] = id;
            queue.push_back(start as u32);
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &self.adjacency[u as usize] {
                    if raw_id[v as usize] == usize::MAX {
                        raw_id[v as usize] = id;
                        queue.push_back(v);
                    }
                }
            }
            components.push((size, start, id));
        }
        // Largest first; ties by smallest contained node (= discovery node,
        // since BFS starts scan from the lowest unvisited index).
        components.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut remap = vec![0usize; components.len()];
        for (new_id, &(_, _, raw)) in components.iter().enumerate() {
            remap[raw] = new_id;
        }
        ComponentPartition {
            component_id: raw_id.into_iter().map(|id| remap[id]).collect(),
            component_sizes: components.into_iter().map(|(size, _, _)| size).collect(),
        }
    }

    /// Induced subgraph on the largest component, along with the index map
    /// between original and subgraph node indices. Labels are carried over.
    pub fn largest_component_subgraph(&self) -> (Graph, SubgraphMap) {
        let partition = self.connected_components();
        let keep: Vec<usize> = (0..self.n)
            .filter(|&i| partition.component_id[i] == 0)
            .collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(a, b)| Some((old_to_new[a]?, old_to_new[b]?)))
            .collect();
        let mut sub = Graph::from_edge_list(&edges, keep.len())
            .expect("induced subgraph indices are valid by construction");
        if let Some(labels) = &self.labels {
            let sub_labels: Vec<String> = keep.iter().map(|&old| labels[old].clone()).collect();
            sub = sub
                .with_labels(sub_labels)
                .expect("labels stay unique under subsetting");
        }
        (
            sub,
            SubgraphMap {
                old_to_new,
                new_to_old: keep,
            },
        )
    }
}

/// Assignment of every node to a connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component id per node; ids are contiguous from 0, component 0 largest.
    pub component_id: Vec<usize>,
    /// Component sizes, descending. Sums to the node count.
    pub component_sizes: Vec<usize>,
}

/// Index bookkeeping for an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphMap {
    /// For each original index, its index in the subgraph (None if dropped).
    pub old_to_new: Vec<Option<usize>>,
    /// For each subgraph index, the original index.
    pub new_to_old: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edge_list_dedups_symmetric_pairs() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 0), (1, 2)], 3).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn from_edge_list_empty_is_fine() {
        let g = Graph::from_edge_list(&[], 4).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn from_edge_list_rejects_out_of_range() {
        let err = Graph::from_edge_list(&[(0, 5)], 3).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 5, n: 3 }));
    }

    #[test]
    fn from_edge_list_rejects_zero_nodes() {
        assert!(matches!(
            Graph::from_edge_list(&[], 0),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn from_edge_list_drops_self_loops() {
        let g = Graph::from_edge_list(&[(1, 1), (0, 1)], 2).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn from_adjacency_triangle() {
        let a = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let g = Graph::from_adjacency(&a).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn from_adjacency_single_edge() {
        let a = vec![vec![0, 1], vec![1, 0]];
        let g = Graph::from_adjacency(&a).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn from_adjacency_rejects_asymmetry() {
        let a = vec![vec![0, 1], vec![0, 0]];
        assert!(matches!(
            Graph::from_adjacency(&a),
            Err(Error::AsymmetricAdjacency { i: 0, j: 1 })
        ));
    }

    #[test]
    fn from_adjacency_rejects_nonzero_diagonal() {
        let a = vec![vec![1, 0], vec![0, 0]];
        assert!(matches!(
            Graph::from_adjacency(&a),
            Err(Error::NonzeroDiagonal { index: 0 })
        ));
    }

    #[test]
    fn mean_degree_examples() {
        let k5 = Graph::from_edge_list(
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            5,
        )
        .unwrap();
        assert_eq!(k5.mean_degree(), 4.0);

        let p3 = Graph::from_edge_list(&[(0, 1), (1, 2)], 3).unwrap();
        assert!((p3.mean_degree() - 4.0 / 3.0).abs() < 1e-15);

        let empty = Graph::from_edge_list(&[], 3).unwrap();
        assert_eq!(empty.mean_degree(), 0.0);
    }

    #[test]
    fn components_examples() {
        let p3 = Graph::from_edge_list(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(p3.connected_components().component_sizes, vec![3]);

        let two_edges = Graph::from_edge_list(&[(0, 1), (2, 3)], 4).unwrap();
        let parts = two_edges.connected_components();
        assert_eq!(parts.component_sizes, vec![2, 2]);
        assert_eq!(parts.component_id, vec![0, 0, 1, 1]);

        let edgeless = Graph::from_edge_list(&[], 3).unwrap();
        assert_eq!(edgeless.connected_components().component_sizes, vec![1, 1, 1]);
    }

    #[test]
    fn largest_component_identity_on_connected() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)], 3).unwrap();
        let (sub, map) = g.largest_component_subgraph();
        assert_eq!(sub, g);
        assert_eq!(map.new_to_old, vec![0, 1, 2]);
        assert_eq!(map.old_to_new, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn largest_component_drops_isolated_node() {
        let g = Graph::from_edge_list(&[(0, 1), (0, 2), (1, 2)], 4).unwrap();
        let (sub, map) = g.largest_component_subgraph();
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(map.old_to_new, vec![Some(0), Some(1), Some(2), None]);
    }

    #[test]
    fn largest_component_tie_breaks_to_smallest_index() {
        let g = Graph::from_edge_list(&[], 2).unwrap();
        let (sub, map) = g.largest_component_subgraph();
        assert_eq!(sub.node_count(), 1);
        assert_eq!(map.new_to_old, vec![0]);
    }

    #[test]
    fn labels_validated() {
        let g = Graph::from_edge_list(&[(0, 1)], 2).unwrap();
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        assert!(g
            .clone()
            .with_labels(vec!["a".into(), "a".into()])
            .is_err());
        let labeled = g.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(labeled.label_of(1), "b");
    }
}
