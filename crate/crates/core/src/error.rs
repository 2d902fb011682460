use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("a graph needs at least one node")]
    EmptyGraph,

    #[error("operation requires at least {required} nodes, got {actual}")]
    TooFewNodes { required: usize, actual: usize },

    #[error("adjacency matrix is not square: row {row} has {len} entries for {n} rows")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("adjacency matrix is asymmetric at ({i}, {j})")]
    AsymmetricAdjacency { i: usize, j: usize },

    #[error("adjacency matrix has a nonzero diagonal at node {index}")]
    NonzeroDiagonal { index: usize },

    #[error("adjacency entry at ({i}, {j}) must be 0 or 1, got {value}")]
    AdjacencyEntry { i: usize, j: usize, value: u8 },

    #[error("expected {expected} node labels, got {actual}")]
    LabelCount { expected: usize, actual: usize },

    #[error("duplicate node label {label:?}")]
    DuplicateLabel { label: String },

    #[error("pair requires two distinct nodes, got ({index}, {index})")]
    SelfPair { index: usize },

    #[error("correlation matrix is asymmetric at ({i}, {j}): |{a} - {b}| exceeds 1e-9")]
    AsymmetricCorrelation { i: usize, j: usize, a: f64, b: f64 },

    #[error("correlation entry at ({i}, {j}) is {value}, outside [-1, 1]")]
    CorrelationOutOfRange { i: usize, j: usize, value: f64 },

    #[error("correlation diagonal at node {index} is {value}, expected 1")]
    CorrelationDiagonal { index: usize, value: f64 },

    #[error("series for node {index} has zero variance; Pearson correlation is undefined")]
    ZeroVariance { index: usize },

    #[error("series length mismatch: node {index} has {actual} samples, expected {expected}")]
    SeriesLengthMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },

    #[error("series need at least 2 samples, got {actual}")]
    TooFewSamples { actual: usize },

    #[error("edge count {edge_count} out of range: must be in [1, {max}] for {n} nodes")]
    EdgeCountOutOfRange {
        edge_count: usize,
        max: usize,
        n: usize,
    },

    #[error("mean degree {mean_degree} is not a finite positive number")]
    InvalidMeanDegree { mean_degree: f64 },

    #[error("density sweep needs at least one target")]
    NoTargets,

    #[error("edge probability {p} outside [0, 1]")]
    InvalidProbability { p: f64 },

    #[error("rewire fraction {fraction} outside [0, 1]")]
    InvalidFraction { fraction: f64 },

    #[error("cannot rewire {requested} edges: only {available} non-edges available")]
    NotEnoughNonEdges { requested: usize, available: usize },

    #[error("block sizes sum to {sum}, expected {n}; blocks must be nonempty")]
    BadBlockSizes { sum: usize, n: usize },

    #[error("block correlation parameters out of range: {message}")]
    BadBlockParameters { message: String },

    #[error("unknown cluster {name:?}")]
    UnknownCluster { name: String },

    #[error("cluster {name:?} is empty")]
    EmptyCluster { name: String },

    #[error("clusters {a:?} and {b:?} overlap")]
    OverlappingClusters { a: String, b: String },

    #[error("paired conditions disagree: {message}")]
    ConditionMismatch { message: String },

    #[error("cohort is empty")]
    EmptyCohort,

    #[error("partition references label {label:?} which is not a node label")]
    UnknownPartitionLabel { label: String },

    #[error("parse error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
