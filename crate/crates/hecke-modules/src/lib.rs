//! Finite-dimensional modules over Iwahori-level Hecke algebras of `GL_n`.
//!
//! A module is given by commuting matrices for `U_1, …, U_n` over a
//! cyclotomic field; from these the crate derives the operators `V_{p,ν}`,
//! `V_p`, `V_p'`, the Hecke polynomial `H_p(X) = ∏(X − U_i)`, the
//! modification operator `Π⁰_λ` and its normalised projection `Π_λ`, the
//! scalars `κ_λ` and slopes, and the contragredient module twisted by the
//! main involution `g ↦ w g^{−t} w`.

mod dual;
mod error;
pub mod matrix;
mod module;
mod projection;
mod roots;
mod slope;

pub use dual::{verify_dual_projection, verify_recisums, DualProjectionReport, PairModule};
pub use error::ModuleError;
pub use matrix::{CycloMatrix, Vector};
pub use module::{basis_vector, zero_vector, HeckeModule};
pub use projection::{denominator, project, project0, project0_operator, project_operator, projection_scalar};
pub use roots::HeckeRoots;
pub use slope::{kappa, slope_data, SlopeData};
