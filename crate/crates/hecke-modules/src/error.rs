use thiserror::Error;

/// Errors raised by Hecke module constructions and projections.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operators U_{i} and U_{j} do not commute")]
    NonCommuting { i: usize, j: usize },
    #[error("left operator {left} and right operator {right} do not commute")]
    NonCommutingPair { left: String, right: String },
    #[error("H_p({root}) does not annihilate the vector (root #{index})")]
    RootNotSatisfied { index: usize, root: String },
    #[error("Hecke root #{index} is zero")]
    ZeroRoot { index: usize },
    #[error("Hecke roots #{i} and #{j} coincide")]
    RepeatedRoot { i: usize, j: usize },
    #[error("denominator of the projection vanishes at (i, j) = ({i}, {j})")]
    VanishingDenominator { i: usize, j: usize },
    #[error("eta_{needed} is required but only {have} Hecke roots are known")]
    MissingRoots { needed: usize, have: usize },
    #[error("T_n = V_p,n does not act invertibly on the module")]
    NotInvertible,
    #[error("twisted relation for {0} fails on the contragredient module")]
    TwistedRelation(String),
    #[error("{0} is not rational; its p-adic valuation is not defined here")]
    NonRational(String),
    #[error("datum is not of finite slope: {0}")]
    NotFiniteSlope(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("vectors are not proportional: left {left}, right {right}")]
    NotProportional { left: String, right: String },
}
