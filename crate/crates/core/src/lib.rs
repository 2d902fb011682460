//! Information parity analysis for undirected networks.
//!
//! The central quantity is the *information parity* of a node pair: how
//! similarly the two nodes are situated with respect to the rest of the
//! network, measured by comparing the distribution of geodesic shells
//! around each node with the distribution of nodes equidistant from both.
//! On top of that metric the crate provides the machinery used in
//! functional-connectivity studies: building unweighted graphs from
//! correlation matrices at exact target densities, sweeping densities,
//! and comparing paired conditions (e.g. the same subject recorded twice)
//! at matched densities.
//!
//! Modules map onto the pipeline stages:
//!
//! - [`graph`]: immutable undirected graphs and structural queries
//! - [`geodesics`]: all-pairs BFS distances and the shell radius bound
//! - [`parity`]: shell profiles, information parity, geodesic entropy
//! - [`builder`]: Pearson correlation and density-matched thresholding
//! - [`compare`]: paired-condition sweeps, cluster pairs, sign consistency
//! - [`synth`]: seeded generators for graphs and correlation matrices
//! - [`io`]: the text formats shared by the CLI and tests
//!
//! ```
//! use netparity::graph::Graph;
//! use netparity::parity::{parity_matrix, LogBase};
//!
//! // A 4-cycle: opposite corners see the network identically.
//! let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4).unwrap();
//! let pm = parity_matrix(&g, LogBase::Bits).unwrap();
//! assert_eq!(pm.value(0, 2), pm.value(1, 3));
//! ```

// Matrix code throughout addresses entries as (i, j); iterator rewrites
// of those loops obscure the symmetry arguments.
#![allow(clippy::needless_range_loop)]

pub mod builder;
pub mod compare;
mod error;
pub mod geodesics;
pub mod graph;
pub mod io;
pub mod parity;
pub mod synth;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use error::{Error, Result};

/// Library version, recorded in reports and file metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
