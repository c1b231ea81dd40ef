//! Characters of `(Z/p^l)^×`, normalised Gauss sums `G(χ)` with respect to the
//! unramified additive character of `Q_p`, and the twisted character sums
//! `Σ χ(γ)ψ(cγ)` whose vanishing pattern drives Birch-type computations.
//!
//! Every closed form is paired with a direct summation so that callers can audit it.

mod characters;
mod error;
mod sums;

pub use characters::{
    all_characters, character_by_index, rat_residue, root, split_p, AddChar, MultChar, UnitGroup, MAX_MODULUS,
};
pub use error::GaussError;
pub use sums::{
    birch_constants, check_gauss, classical_gauss_sum, delta_factor, gauss_sum, primitive_characters, sweep_gauss,
    sweep_twisted, twisted_sum, BirchConstants, GaussCheck, TwistedSum, TwistedSweep,
};
