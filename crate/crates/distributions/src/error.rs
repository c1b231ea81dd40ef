use thiserror::Error;

use crate::Class;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("κ = 0: the symbol is not of finite slope")]
    NotFiniteSlope,
    #[error("level {level} is not stored (stored levels {min}..={max})")]
    MissingLevel { level: u32, min: u32, max: u32 },
    #[error("class {class} is not a class of level {level}")]
    NotAClass { class: Class, level: u32 },
    #[error("character conductor p^{conductor} exceeds the depth p^{depth}")]
    ConductorTooDeep { conductor: u32, depth: u32 },
    #[error("the character has trivial conductor; interpolation requires a non-trivial conductor")]
    TrivialConductor,
    #[error("value has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("distributions live on different towers or coordinate sets")]
    Incompatible,
    #[error(transparent)]
    Gauss(#[from] gauss_sums::GaussError),
}
