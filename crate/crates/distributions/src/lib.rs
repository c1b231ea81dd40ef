//! Distributions on the tower of ray class groups `C(p^m)`.
//!
//! The cohomological input is abstracted to an [`EigenSymbol`]: base values at a deep
//! level together with a `U_p`-eigenvalue `κ`, pushed down to shallower levels by
//! `B(x, p^m) = κ^{−1}·Σ_{a mod p} B(x + a·p^m, p^{m+1})`. [`build_mu`] rescales by
//! `κ^{−m}` so that the result satisfies the distribution relation, and the remaining
//! operations integrate characters, check boundedness and test the functional equation
//! under `x ↦ x^∨ = (−1)^{n−1}x^{−1}`.

mod distribution;
mod error;
mod functional;
mod integrate;
mod kappa_hat;
mod symbol;
mod tower;

pub use distribution::{
    check_boundedness, check_distribution_relation, check_distribution_relation_with, BoundednessReport, BoundednessWitness,
    CosetWitness, Distribution, RelationReport,
};
pub use error::DistError;
pub use functional::{check_functional_equation, dual_symbol, involution_vee, value_vee, DualEigenData, FunctionalReport};
pub use integrate::{fourier_inversion, integrate_at, integrate_character, FourierReport, Integral};
pub use kappa_hat::{kappa_hat, InterpolationInput, KappaHat};
pub use symbol::{build_mu, EigenSymbol};
pub use tower::{tower_characters, Class, RayTower, TowerChar};
