use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} is out of range for a {num_qubits}-qubit system")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid qubit count {n}: {reason}")]
    InvalidSize { n: usize, reason: &'static str },

    #[error("{n} qubits exceeds the {limit}-qubit limit for {what}")]
    SizeLimit {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("duplicate qubit index {0} within one Pauli term")]
    DuplicateQubit(usize),

    #[error("control and target must be distinct qubits (both are {0})")]
    InvalidPair(usize),

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitCountMismatch(usize, usize),

    #[error("parameter count mismatch: expected {expected}, got {got}")]
    ParamCountMismatch { expected: usize, got: usize },

    #[error("expectation value carries imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("state vector is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("terms of a Hamiltonian part do not pairwise commute")]
    NonCommutingPart,

    #[error("ansatz layers must be even for the alternating-order variant, got {0}")]
    OddLayerCount(usize),

    #[error("{0} is not supported here: {1}")]
    UnsupportedAnsatz(&'static str, &'static str),

    #[error("transfer string length {got} does not match the expected {expected} blocks")]
    TransferStringLength { expected: usize, got: usize },

    #[error("target layer count {layers} is not divisible by the {blocks}-block transfer string")]
    IndivisibleLayers { layers: usize, blocks: usize },

    #[error("invalid transfer string symbol {0:?} (expected 'T' or 'R')")]
    InvalidTransferSymbol(char),

    #[error("parameter pool is empty")]
    EmptyPool,

    #[error("parameter pool does not match the circuit: {0}")]
    PoolMismatch(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown task id {0:?}")]
    UnknownTask(String),

    #[error("task {task} is unavailable: {reason}")]
    TaskUnavailable { task: String, reason: String },

    #[error("init string {string:?} is not allowed for task {task}")]
    InitStringNotAllowed { task: String, string: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
