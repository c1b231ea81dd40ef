use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("a weight needs at least one embedding and one entry")]
    Empty,
    #[error("weight {0:?} is not dominant (entries must be weakly decreasing)")]
    NotDominant(Vec<i64>),
    #[error("all embeddings must carry weights of the same length")]
    LengthMismatch,
    #[error("weights for GL_n and GL_(n−1) must have the same number of embeddings and lengths n, n − 1 (got {mu_len} and {nu_len})")]
    IncompatiblePair { mu_len: usize, nu_len: usize },
    #[error("weight {0} is not pure")]
    NotPure(String),
    #[error("cannot parse weight {0:?}")]
    Parse(String),
}
