//! Verification suites and computations exposed by the `hecke-forge` binary.
//!
//! [`run_suite`] executes the selected suites and returns one [`Report`] per case, in a
//! fixed order; [`compute`] holds the single-shot computations behind the subcommands.

pub mod compute;
mod config;
pub mod fixtures;
mod report;
mod suites;

pub use config::{ConfigError, Suite, SuiteConfig};
pub use report::{Report, Status, Summary};
pub use suites::{contragredient_check, functional_equation_case, projection_sweep, run_suite, COSET_LIMIT};
