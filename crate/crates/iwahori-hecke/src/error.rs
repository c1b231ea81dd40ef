use exact_arith::ArithError;
use gln_matrices::GlnError;
use thiserror::Error;

/// Errors raised by the coset engine.
#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("operator {tag} is not defined for n = {n}")]
    InvalidTag { tag: String, n: usize },
    #[error("representative is not upper triangular: {0:?}")]
    NotTriangular(Vec<Vec<String>>),
    #[error("coset sums live at different levels")]
    LevelMismatch,
    #[error("coverage check failed for {operator}: {reason}; sample {sample:?}")]
    Coverage { operator: String, reason: String, sample: Vec<Vec<String>> },
    #[error("{what} mismatch at coefficient {index}: only left {only_left:?}, only right {only_right:?}")]
    Mismatch {
        what: String,
        index: usize,
        only_left: Vec<String>,
        only_right: Vec<String>,
    },
    #[error("index count mismatch for {what}: counted {counted}, formula {formula}")]
    IndexMismatch { what: String, counted: u64, formula: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Gln(#[from] GlnError),
}
