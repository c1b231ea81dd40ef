//! Dominant weights, purity and Weyl branching.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::WeightError;

/// A dominant integral weight of `GL_n`, one entry list per real embedding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    embeddings: Vec<Vec<i64>>,
}

impl Weight {
    pub fn new(embeddings: Vec<Vec<i64>>) -> Result<Weight, WeightError> {
        let n = embeddings.first().map(Vec::len).ok_or(WeightError::Empty)?;
        if n == 0 {
            return Err(WeightError::Empty);
        }
        if embeddings.iter().any(|e| e.len() != n) {
            return Err(WeightError::LengthMismatch);
        }
        if let Some(bad) = embeddings.iter().find(|e| e.windows(2).any(|w| w[0] < w[1])) {
            return Err(WeightError::NotDominant(bad.clone()));
        }
        Ok(Weight { embeddings })
    }

    /// A weight for the single real embedding of `Q`.
    pub fn single(entries: Vec<i64>) -> Result<Weight, WeightError> {
        Weight::new(vec![entries])
    }

    /// The rank `n` of `GL_n`.
    pub fn n(&self) -> usize {
        self.embeddings[0].len()
    }

    pub fn embeddings(&self) -> &[Vec<i64>] {
        &self.embeddings
    }

    /// Strictly decreasing at every embedding.
    pub fn is_regular(&self) -> bool {
        self.embeddings.iter().all(|e| e.windows(2).all(|w| w[0] > w[1]))
    }

    /// The highest weight of the contragredient: `(−μ_n, …, −μ_1)`.
    pub fn contragredient(&self) -> Weight {
        Weight { embeddings: self.embeddings.iter().map(|e| e.iter().rev().map(|x| -x).collect()).collect() }
    }

    /// The twist `μ + t` (add `t` to every entry).
    pub fn shift(&self, t: i64) -> Weight {
        Weight { embeddings: self.embeddings.iter().map(|e| e.iter().map(|x| x + t).collect()).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .embeddings
            .iter()
            .map(|e| format!("({})", e.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Parses `"3,1,-1"` (one embedding) or `"3,1,-1;2,0,-2"` (several); parentheses are optional.
impl FromStr for Weight {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Weight, WeightError> {
        let embeddings = s
            .split(';')
            .map(|part| {
                part.trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| WeightError::Parse(s.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Weight::new(embeddings)
    }
}

/// A random pure dominant weight of `GL_n` (one embedding) with entries in
/// `[−bound, bound]` (approximately) and purity weight `w ∈ [−bound, bound]`.
/// For `n = 1` any integer is returned.
pub fn random_pure<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Weight {
    loop {
        let w = rng.gen_range(-bound..=bound);
        if n % 2 == 1 && n > 1 && w % 2 != 0 {
            continue;
        }
        let mut top: Vec<i64> = (0..n / 2).map(|_| rng.gen_range(-bound..=bound)).collect();
        top.sort_unstable_by(|a, b| b.cmp(a));
        let mut e = vec![0; n];
        for (i, x) in top.iter().enumerate() {
            e[i] = *x;
            e[n - 1 - i] = w - x;
        }
        if n % 2 == 1 {
            e[n / 2] = if n == 1 { rng.gen_range(-bound..=bound) } else { w / 2 };
        }
        if let Ok(weight) = Weight::single(e) {
            return weight;
        }
    }
}

/// Result of the purity test `μ_{ι,i} + μ_{ι,n+1−i} = w` for all `i`, `ι`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Purity {
    pub pure: bool,
    pub w: Option<i64>,
    /// For `GL_1` the condition is empty; `w := 2μ_1` is used and flagged.
    pub gl1_degenerate: bool,
}

pub fn check_purity(mu: &Weight) -> Purity {
    let n = mu.n();
    let sums: Vec<i64> =
        mu.embeddings.iter().flat_map(|e| (0..n).map(move |i| e[i] + e[n - 1 - i])).collect();
    let pure = sums.windows(2).all(|w| w[0] == w[1]);
    Purity { pure, w: pure.then(|| sums[0]), gl1_degenerate: n == 1 }
}

/// All `GL_{n−1}` weights `μ*` with `μ_{ι,i} ≥ μ*_{ι,i} ≥ μ_{ι,i+1}` at every
/// embedding, in decreasing lexicographic order (each occurs once).
pub fn branch(mu: &Weight) -> Vec<Weight> {
    let n = mu.n();
    if n < 2 {
        return Vec::new();
    }
    let per_embedding: Vec<Vec<Vec<i64>>> = mu.embeddings.iter().map(|e| interlacing(e)).collect();
    let mut out: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for options in &per_embedding {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect();
    }
    let mut weights: Vec<Weight> = out.into_iter().map(|embeddings| Weight { embeddings }).collect();
    weights.sort_by(|a, b| b.cmp(a));
    weights
}

fn interlacing(e: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for i in 0..e.len() - 1 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (e[i + 1]..=e[i]).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Closed form `∏_ι ∏_{i<n} (μ_{ι,i} − μ_{ι,i+1} + 1)` for the number of branches.
pub fn branch_count(mu: &Weight) -> u64 {
    mu.embeddings.iter().flat_map(|e| e.windows(2).map(|w| (w[0] - w[1] + 1) as u64)).product()
}
