use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a verified heuristic (cocycle extension, subcomplex location) gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationFailure {
    NotACocycle,
    ClassIsZero,
    NotIsomorphic,
}

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerificationFailure::NotACocycle => "not-a-cocycle",
            VerificationFailure::ClassIsZero => "class-is-zero",
            VerificationFailure::NotIsomorphic => "not-isomorphic",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("vertex {0} repeated within one face")]
    RepeatedVertex(usize),
    #[error("at most {max} vertices are supported, got {m}")]
    TooManyVertices { m: usize, max: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("cochain mixes degrees {0} and {1}")]
    MixedDegrees(isize, isize),
    #[error("cochain operands live on different complexes")]
    ComplexMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("subspace is not contained in the ambient span")]
    SubspaceNotContained,
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(isize),
    #[error("Sq^{n} image of a degree {degree} representative is not a cocycle")]
    ImageNotCocycle { n: usize, degree: isize },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("pair {0}: L is not a subcomplex of K")]
    NotASubcomplex(usize),
    #[error("expected {expected} complexes, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("complex is not connected")]
    Disconnected,
    #[error("{0}")]
    Unsupported(String),
    #[error("vertex cap exceeded: complex has {m} vertices, cap is {cap}")]
    VertexCapExceeded { m: usize, cap: usize },
    #[error("enumeration supports 1 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(VerificationFailure),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown complex name: {0}")]
    UnknownName(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for resource guards (vertex caps, long enumerations) rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::VertexCapExceeded { .. } | Error::EnumerationRange { .. }
        )
    }
}
