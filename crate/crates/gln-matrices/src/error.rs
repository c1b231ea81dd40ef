use exact_arith::ArithError;
use thiserror::Error;

/// Errors raised while building or verifying GL(n) matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlnError {
    /// The context violates `n >= 2`, `p` prime, `r >= 1` or `v_p(f) >= r`.
    #[error("invalid context: {0}")]
    InvalidContext(String),
    /// The requested matrix does not exist for this rank or argument shape.
    #[error("tag {tag} is not valid for rank {n}: {reason}")]
    InvalidTag { tag: String, n: usize, reason: String },
    /// An identity failed; the difference of both sides is attached.
    #[error("identity {name} fails; difference {difference:?}")]
    IdentityFailure { name: String, difference: Vec<Vec<String>> },
    /// A property failed for a specific parameter pair.
    #[error("counterexample u={u:?} w={w:?}: {reason}")]
    Counterexample { u: Vec<String>, w: Vec<String>, reason: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
