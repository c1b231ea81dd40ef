use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus p^{level} with p = {p} is too large")]
    TooLarge { p: u64, level: u32 },
    #[error("the character has trivial conductor; a non-trivial p-power conductor is required")]
    TrivialConductor,
    #[error("level {level} is below the conductor exponent {conductor}")]
    LevelBelowConductor { level: u32, conductor: u32 },
    #[error("{0} is not in Z[1/p]")]
    NotPAdicRational(String),
    #[error("character index {index} out of range (there are {count} characters mod {modulus})")]
    IndexOutOfRange { index: usize, count: usize, modulus: u64 },
    #[error("characters live on different groups")]
    GroupMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
