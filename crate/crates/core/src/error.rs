use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("invalid pure braid generator indices A[{i},{j}] for n = {n}")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },

    #[error("variable t{var} is zero but appears with a negative exponent")]
    ZeroDivision { var: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("determinant {0} is not a unit of the Laurent ring")]
    NotInvertible(String),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("word syntax error at token {token:?}: {reason}")]
    Syntax { token: String, reason: String },

    #[error("strand count must be at least {min}, got {n}")]
    TooFewStrands { n: usize, min: usize },

    #[error("the pair (2,3) is certified by search only, not by change of basis")]
    ExcludedPair,

    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
