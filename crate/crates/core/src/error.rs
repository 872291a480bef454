use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("vertex {vertex} is not in 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("empty hyperedge")]
    EmptyEdge,

    #[error("duplicate hyperedge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("edge size k={k} must satisfy 1 <= k <= n={n}")]
    EdgeSize { k: usize, n: usize },

    #[error("not a hypergraph state: amplitude {index} = {re}{im:+}i is not ±1/√{dim}")]
    NotHypergraphState { index: usize, re: f64, im: f64, dim: usize },

    #[error("amplitude vector has length {len}, expected a power of two 2^n")]
    BadLength { len: usize },

    #[error("state is not normalized: norm² = {0}")]
    NotNormalized(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("circuit uses {needed} qubits, budget is {max}")]
    QubitBudget { needed: usize, max: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("circuit has no measurements")]
    NoMeasurements,

    #[error("qasm line {line}: {msg}")]
    Qasm { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
