use thiserror::Error;

use crate::indexsets::KVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("alpha_{index} = {value} must be a positive rational")]
    NonPositiveAlpha { index: usize, value: String },

    #[error("malformed rational {0:?}: expected `p/q` or an integer")]
    MalformedRational(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("-N is a polar divisor (witness k = {witness:?})")]
    Pole { witness: KVector },

    #[error("series expansion diverges: {0}")]
    Divergent(String),

    #[error("no convergence within budget: {0}")]
    NonConvergence(String),

    #[error("point is not regular for the iterated-limit oracle: N = {0:?}")]
    IrregularPoint(Vec<u32>),

    #[error("bernoulli cache: {0}")]
    Cache(String),
}
