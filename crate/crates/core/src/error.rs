use thiserror::Error;

use crate::linalg::{Matrix, Subspace};
use crate::scalars::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejected module parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("diameter must be at least 1, got {0}")]
    Diameter(usize),
    #[error("q = {0} is forbidden (q must not be 0, 1 or -1)")]
    ForbiddenQ(Scalar),
    #[error("{name} must be nonzero")]
    ZeroScalar { name: &'static str },
    #[error("{name}^2 = q^{exponent}: the eigenvalue sequence would repeat")]
    Collision { name: &'static str, exponent: i64 },
    #[error("expected {expected} phi entries, got {got}")]
    PhiLength { expected: usize, got: usize },
    #[error("phi_{index} must be nonzero")]
    PhiZero { index: usize },
    #[error("a must not be 1 or -1 here (a - 1/a vanishes)")]
    UnitA,
}

/// Malformed text input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed scalar token {0:?}")]
    Scalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

impl ParseError {
    pub fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Line { line, msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular (rank {rank} < {dim})")]
    Singular { rank: usize, dim: usize },
    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("q-Dolan/Grady relation {relation} fails")]
    Qdg { relation: u8, residual: Matrix },
    #[error("the pair (A, A*) is reducible")]
    Reducible { witness: Option<Subspace> },
    #[error("inconsistent spectrum: {0}")]
    Spectrum(String),
    #[error("duplicate eigenvalue {0}")]
    DuplicateEigenvalue(Scalar),
    #[error("a spectrum needs at least two eigenvalues")]
    TooFewEigenvalues,
    #[error("{0}")]
    NotDiagonalizable(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
