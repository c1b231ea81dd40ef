//! The distinguished matrices of the GL(n) x GL(n-1) setting and machine checks of
//! the identities they satisfy.
//!
//! * [`standard`] builds `t_(f)`, `h^(1)`, `h^(f)`, `w_n`, `j`, `j_delta`, `d_(x)` and
//!   friends as exact Laurent matrices, together with the outer involution `iota`.
//! * [`iwahori_member`] decides membership in the Iwahori subgroup of level `p^r`.
//! * [`epimorphism`] constructs the matrices `k_{u,w}`, `k'_{u,w}` relating `h^(f)` and
//!   `h^(f varpi)` and verifies that `det k_{u,w}` sweeps out `(1+f)/(1+f p)`.
//! * [`inverseh`] verifies the contragredient identity for `h^(f)` symbolically and numerically.

mod context;
pub mod epimorphism;
mod error;
pub mod inverseh;
mod iwahori;
pub mod standard;

pub use context::{FValue, GlnContext};
pub use epimorphism::{
    build_distribution_family, symbolic_family_check, verify_epimorphism, DistributionFamily,
    EpimorphismReport,
};
pub use error::GlnError;
pub use inverseh::{verify_inverseft, verify_inverseh, InversehReport, XValue};
pub use iwahori::{iwahori_member, rat_mod_p};
pub use standard::{build_standard, iota, NamedMatrix, StandardTag};

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, GlnError>;
