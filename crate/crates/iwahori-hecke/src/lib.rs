//! Hecke algebras of `GL_n(Q_p)` realised as sums of right cosets `g K`.
//!
//! `K` is either `GL_n(Z_p)` (level `r = 0`, the spherical case) or the Iwahori
//! subgroup `K_I` of level `p^r`. Every representative is upper triangular, i.e. the
//! algebra lives in the monoid `B K_I`. Cosets are never canonicalised: equality is the
//! exact membership test `g^{-1} h in K`, and sums fold pairwise inside buckets of equal
//! determinant valuation.
//!
//! * [`coset`]: [`Coset`], [`CosetSum`] and convolution.
//! * [`monoid`]: p-adic Smith reduction, membership in `B K_I`, random Iwahori elements.
//! * [`operators`]: the operators `T_nu`, `U_i`, `V_{p,nu}`, `V_p`, `V_p'`, restriction of
//!   spherical sums and the disjointness/coverage invariants.
//! * [`relations`]: the factorisation of the Hecke polynomial and commutativity.
//! * [`satake`]: symmetric polynomials, the Satake display, its integral variant and the
//!   Rankin-Selberg local factor.
//! * [`indices`]: brute-force index counts against closed formulas.

pub mod coset;
mod error;
pub mod indices;
pub mod monoid;
pub mod operators;
pub mod relations;
pub mod satake;

pub use coset::{coset_equal, convolve, Coset, CosetSum, Level};
pub use error::HeckeError;
pub use indices::{count_indices, IndexCounts};
pub use operators::{expand_operator, restrict_spherical, spherical_double_coset, HeckeOperatorTag};
pub use relations::{verify_commutativity, verify_gritsenko};
pub use satake::{satake, satake_integral, shintani_lfactor, SymPoly};

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, HeckeError>;
