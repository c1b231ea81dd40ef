//! Suite configuration and the flat `key = value` config file.
//!
//! Grammar: one `key = value` pair per line; `#` starts a comment; blank lines are
//! ignored; lists are comma separated. Unknown keys are rejected.
//!
//! ```text
//! seed = 2024
//! suites = gauss, weights
//! primes = 2, 3
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid value for {key}: {message}")]
    Value { key: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Matrices,
    Hecke,
    Projections,
    Gauss,
    Weights,
    Distributions,
    FunctionalEquation,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Matrices,
        Suite::Hecke,
        Suite::Projections,
        Suite::Gauss,
        Suite::Weights,
        Suite::Distributions,
        Suite::FunctionalEquation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matrices => "matrices",
            Suite::Hecke => "hecke",
            Suite::Projections => "projections",
            Suite::Gauss => "gauss",
            Suite::Weights => "weights",
            Suite::Distributions => "distributions",
            Suite::FunctionalEquation => "functional-equation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| format!("unknown suite {s:?} (expected one of {})", Suite::ALL.map(Suite::name).join(", ")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Largest `n` for the `GL_n` grids (≥ 2).
    pub n_max: usize,
    pub primes: Vec<u64>,
    /// Iwahori level exponent.
    pub r: u32,
    /// Random samples for coset coverage.
    pub coverage_samples: usize,
    /// Random modules per `n` in the projection suite.
    pub random_modules: usize,
    /// Random weight pairs in the criticality suite.
    pub weight_pairs: usize,
    /// Largest conductor `p^s` in the Gauss-sum norm sweep.
    pub gauss_max_modulus: u64,
    /// Cap on the level of the exhaustive twisted-sum sweep, which otherwise covers every `p^l ≤ gauss_max_modulus`.
    pub twisted_max_level: u32,
    pub dist_primes: Vec<u64>,
    pub dist_max_depth: u32,
    pub fe_primes: Vec<u64>,
    /// A serialised distribution whose distribution relation is checked as an extra case.
    pub distribution_fixture: Option<PathBuf>,
    pub json_out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: 2024,
            suites: Suite::ALL.to_vec(),
            n_max: 3,
            primes: vec![2, 3],
            r: 1,
            coverage_samples: 200,
            random_modules: 100,
            weight_pairs: 500,
            gauss_max_modulus: 27,
            twisted_max_level: 4,
            dist_primes: vec![2, 3, 5],
            dist_max_depth: 4,
            fe_primes: vec![3, 5],
            distribution_fixture: None,
            json_out: None,
            jobs: None,
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| ConfigError::Value { key: key.into(), message: e.to_string() }))
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| ConfigError::Value { key: key.into(), message: e.to_string() })
}

impl SuiteConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "seed" => self.seed = parse_one(key, value)?,
            "suites" | "suite" => self.suites = parse_list(key, value)?,
            "n_max" => self.n_max = parse_one(key, value)?,
            "primes" => self.primes = parse_list(key, value)?,
            "r" => self.r = parse_one(key, value)?,
            "coverage_samples" => self.coverage_samples = parse_one(key, value)?,
            "random_modules" => self.random_modules = parse_one(key, value)?,
            "weight_pairs" => self.weight_pairs = parse_one(key, value)?,
            "gauss_max_modulus" => self.gauss_max_modulus = parse_one(key, value)?,
            "twisted_max_level" => self.twisted_max_level = parse_one(key, value)?,
            "dist_primes" => self.dist_primes = parse_list(key, value)?,
            "dist_max_depth" => self.dist_max_depth = parse_one(key, value)?,
            "fe_primes" => self.fe_primes = parse_list(key, value)?,
            "distribution_fixture" => self.distribution_fixture = Some(PathBuf::from(value.trim())),
            "json_out" => self.json_out = Some(PathBuf::from(value.trim())),
            "jobs" => self.jobs = Some(parse_one(key, value)?),
            _ => return Err(ConfigError::Value { key: key.into(), message: "unknown key".into() }),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<SuiteConfig, ConfigError> {
        let mut cfg = SuiteConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line: i + 1, message: format!("expected `key = value`, got {line:?}") })?;
            cfg.set(k.trim(), v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<SuiteConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        SuiteConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, message: String| Err(ConfigError::Value { key: key.into(), message });
        if self.n_max < 2 {
            return bad("n_max", "n must be at least 2".into());
        }
        if self.r < 1 {
            return bad("r", "r must be at least 1".into());
        }
        for (key, list) in [("primes", &self.primes), ("dist_primes", &self.dist_primes), ("fe_primes", &self.fe_primes)] {
            if let Some(p) = list.iter().find(|p| !exact_arith::is_prime(**p)) {
                return bad(key, format!("{p} is not prime"));
            }
        }
        if self.dist_max_depth < 2 {
            return bad("dist_max_depth", "at least two levels are needed".into());
        }
        if self.jobs == Some(0) {
            return bad("jobs", "must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_flat_file() {
        let cfg = SuiteConfig::parse("# comment\nseed = 7\nsuites = gauss, weights  # trailing\n\nprimes=2,5\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.suites, vec![Suite::Gauss, Suite::Weights]);
        assert_eq!(cfg.primes, vec![2, 5]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SuiteConfig::parse("seed 7"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(SuiteConfig::parse("colour = red"), Err(ConfigError::Value { .. })));
        assert!(matches!(SuiteConfig::parse("primes = 2, 4"), Err(ConfigError::Value { .. })));
        assert!(matches!(SuiteConfig::parse("suites = nope"), Err(ConfigError::Value { .. })));
    }

    #[test]
    fn shipped_file_matches_defaults() {
        let cfg = SuiteConfig::parse(include_str!("../default.conf")).unwrap();
        assert_eq!(cfg, SuiteConfig::default());
    }
}
