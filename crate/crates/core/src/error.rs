use thiserror::Error;

use crate::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex ids must be positive")]
    NonPositiveVertex,
    #[error("ground set is missing listed vertex {0}")]
    GroundSetMissing(u32),
    #[error("operation is undefined on the void complex")]
    VoidComplex,
    #[error("subcomplex face {0} is not a face of the total complex")]
    NotSubcomplex(VertexSet),
    #[error("{0} is not a facet")]
    NotAFacet(VertexSet),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(i32, i32),
    #[error("complex is not pure")]
    NotPure,
    #[error("invalid facet pairing: {0}")]
    InvalidPairing(String),
    #[error("vertex {0} is already present")]
    VertexPresent(u32),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} vertices exceed the limit of {1} for this operation")]
    TooManyVertices(usize, usize),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
