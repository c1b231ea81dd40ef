//! Highest-weight combinatorics for `GL_n × GL_{n−1}` over a totally real field.
//!
//! A [`Weight`] carries one dominant integral weight per real embedding. The
//! crate checks purity, enumerates Weyl's branching `GL_n ↓ GL_{n−1}`,
//! computes the embedding set `Emb(ν̌, μ)` of twists `ν` for which
//! `M_ν̌[ν] ↪ M_μ`, the Langlands parameters, and the critical half-integers
//! `s = ½ + ν`.

mod critical;
mod error;
mod weight;

pub use critical::{critical_data, critical_table, emb_set, langlands, rho, CriticalData, EmbSet, TableRow};
pub use error::WeightError;
pub use weight::{branch, branch_count, check_purity, random_pure, Purity, Weight};
