use thiserror::Error;

/// Errors raised by the algebraic and numerical layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands belong to different Lie algebras")]
    AlgebraMismatch,

    #[error("invalid Lie algebra presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("length mismatch: signature has {signature} slots, permutation has {permutation}")]
    LengthMismatch { signature: usize, permutation: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("path constraint violated: {0}")]
    PathConstraint(String),

    #[error("invalid splitting function: {0}")]
    InvalidSplitting(String),

    #[error("degree tag {0} is outside {{0, 1}}")]
    InvalidDegree(u8),

    #[error("generalized Jacobi identity requested for n = {0}; only 1 <= n <= 4 is supported")]
    JacobiArity(usize),

    #[error("homomorphisms cannot be composed: {0}")]
    Composition(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("finite group error: {0}")]
    FiniteGroup(String),

    #[error("crossed module axiom {axiom} fails at {witness}")]
    CrossedModule { axiom: &'static str, witness: String },

    #[error("not a strict 2-group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
