//! Exact scalar arithmetic for the Hecke-algebra toolkit.
//!
//! Everything downstream is built on the types in this crate and never rounds:
//!
//! * [`Rat`] — arbitrary precision rationals (a re-export of `BigRational`),
//! * [`Cyclo`] — elements of cyclotomic fields `Q(zeta_m)` in reduced power-basis form,
//! * [`PadicVal`] — p-adic valuations with a point at infinity,
//! * [`LaurentPoly`] / [`LaurentMatrix`] — multivariate Laurent polynomials with
//!   cyclotomic coefficients and square matrices over them, used for symbolic
//!   verification of matrix identities,
//! * [`RatMatrix`] — dense rational matrices for numeric work,
//! * [`par`] — the data-parallel / sequential execution switch shared by all crates.

mod cyclo;
mod error;
mod laurent;
mod matrix;
pub mod padic;
pub mod par;
mod rat;

pub use cyclo::{cyclotomic_polynomial, euler_phi, Cyclo};
pub use error::ArithError;
pub use laurent::{LaurentMatrix, LaurentPoly, Monomial, Var};
pub use matrix::RatMatrix;
pub use padic::{is_prime, valuation, PadicVal};
pub use rat::{fmt_rat, int, parse_rat, rat, rat_opt_serde, rat_seq_serde, rat_serde, Rat};

/// Convenience result alias for this crate.
pub type Result<T> = std::result::Result<T, ArithError>;
