use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("polynomial must be monic with degree at least 1")]
    NotMonicNonConstant,

    #[error("polynomial is not square-free")]
    NotSquareFree,

    #[error("square-free part does not match the characteristic polynomial")]
    InconsistentSquarefree,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("matrix is singular")]
    Singular,

    #[error("subspace is not invariant under the map")]
    NotInvariant,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not semisimple")]
    NotSemisimple,

    #[error("kernel and image do not form a direct sum")]
    NotDirectSum,

    #[error("subspace is not contained in the ambient space")]
    NotContained,

    #[error("no invariant complement exists")]
    NoInvariantComplement,

    #[error("correction term requested for index {0}, need 2 <= n with r_1..r_(n-1) known")]
    InvalidIndex(usize),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
