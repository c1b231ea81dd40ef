//! Embedding sets, Langlands parameters and critical half-integers.

use exact_arith::{int, rat, Rat};
use serde::Serialize;

use crate::weight::{check_purity, Weight};
use crate::WeightError;

/// An integer interval `[lo, hi]`, possibly empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbSet {
    pub bounds: Option<(i64, i64)>,
}

impl EmbSet {
    fn from_bounds(lo: i64, hi: i64) -> EmbSet {
        EmbSet { bounds: (lo <= hi).then_some((lo, hi)) }
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn len(&self) -> usize {
        self.bounds.map_or(0, |(lo, hi)| (hi - lo + 1) as usize)
    }

    pub fn contains(&self, t: i64) -> bool {
        self.bounds.is_some_and(|(lo, hi)| lo <= t && t <= hi)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.bounds.map_or_else(Vec::new, |(lo, hi)| (lo..=hi).collect())
    }
}

fn check_pair(nu: &Weight, mu: &Weight) -> Result<(), WeightError> {
    if mu.n() < 2 || nu.n() + 1 != mu.n() || nu.embeddings().len() != mu.embeddings().len() {
        return Err(WeightError::IncompatiblePair { mu_len: mu.n(), nu_len: nu.n() });
    }
    Ok(())
}

/// `Emb(ν̌, μ) = {ν ∈ Z : ν̌ + ν interlaces μ at every embedding}`, with
/// `ν̌ = (−ν_{n−1}, …, −ν_1)`. An intersection of intervals, hence an interval.
pub fn emb_set(nu: &Weight, mu: &Weight) -> Result<EmbSet, WeightError> {
    check_pair(nu, mu)?;
    let dual = nu.contragredient();
    let (mut lo, mut hi) = (i64::MIN, i64::MAX);
    for (m, d) in mu.embeddings().iter().zip(dual.embeddings()) {
        for i in 0..d.len() {
            lo = lo.max(m[i + 1] - d[i]);
            hi = hi.min(m[i] - d[i]);
        }
    }
    Ok(EmbSet::from_bounds(lo, hi))
}

/// `ρ_n = ((n−1)/2, (n−3)/2, …, −(n−1)/2)`.
pub fn rho(n: usize) -> Vec<Rat> {
    (0..n).map(|i| rat(n as i64 - 1 - 2 * i as i64, 2)).collect()
}

/// Langlands parameter `l = 2(μ + ρ_n) − (w)`; integral, one list per embedding.
pub fn langlands(mu: &Weight, w: i64) -> Vec<Vec<i64>> {
    let n = mu.n() as i64;
    mu.embeddings()
        .iter()
        .map(|e| e.iter().enumerate().map(|(i, x)| 2 * x + (n - 1 - 2 * i as i64) - w).collect())
        .collect()
}

/// Critical-value data for a pair of pure weights `(μ, ν)` of `GL_n × GL_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalData {
    pub w: i64,
    pub v: i64,
    /// `ν` lives on `GL_1`, where purity is vacuous and `v := 2ν_1`.
    pub gl1_degenerate: bool,
    /// `w ≡ v (mod 2)`.
    pub parity_ok: bool,
    /// Whether `parity_ok` agrees with `Emb(ν̌, μ) ≠ ∅`.
    pub parity_consistent: bool,
    /// `(1 + w + v)/2`.
    #[serde(with = "exact_arith::rat_serde")]
    pub center: Rat,
    pub l: Vec<Vec<i64>>,
    pub m: Vec<Vec<i64>>,
    /// `min_{i,j,ι} |l_{ι,i} − m_{ι,j}|`.
    pub min_gap: i64,
    /// `(w + v)/2 − (min_gap − 1)/2`, the left end of `Emb(ν̌, μ)`.
    pub nu_min: i64,
    /// `(w + v)/2 − min_gap + 1`, as displayed in the literature.
    #[serde(with = "exact_arith::rat_serde")]
    pub nu_min_literal: Rat,
    #[serde(with = "exact_arith::rat_serde")]
    pub s_min: Rat,
    #[serde(with = "exact_arith::rat_serde")]
    pub s_max: Rat,
    pub emb: EmbSet,
    /// `{½ + ν : ν ∈ Emb(ν̌, μ)}`.
    #[serde(with = "exact_arith::rat_seq_serde")]
    pub critical_set: Vec<Rat>,
    /// `critical_set = [s_min, s_max] ∩ (½ + Z)` whenever `Emb(ν̌, μ) ≠ ∅`.
    /// (`s_min`, `s_max` only see the Langlands parameters and cannot detect
    /// an empty embedding set.)
    pub bijection_holds: bool,
    /// Whether the literal `ν_min` gives the same end points.
    pub literal_bounds_match: bool,
}

fn half_plus(t: i64) -> Rat {
    rat(2 * t + 1, 2)
}

pub fn critical_data(mu: &Weight, nu: &Weight) -> Result<CriticalData, WeightError> {
    check_pair(nu, mu)?;
    let pm = check_purity(mu);
    let pn = check_purity(nu);
    let w = pm.w.ok_or_else(|| WeightError::NotPure(mu.to_string()))?;
    let v = pn.w.ok_or_else(|| WeightError::NotPure(nu.to_string()))?;
    let l = langlands(mu, w);
    let m = langlands(nu, v);
    let min_gap = l
        .iter()
        .zip(&m)
        .flat_map(|(li, mi)| li.iter().flat_map(move |a| mi.iter().map(move |b| (a - b).abs())))
        .min()
        .expect("non-empty parameters");
    // l_i − m_j ≡ 1 + w + v (mod 2), so w + v − min_gap + 1 is even
    let nu_min = (w + v - min_gap + 1).div_euclid(2);
    let nu_max = w + v - nu_min;
    let nu_min_literal = rat(w + v, 2) - int(min_gap) + int(1);
    let emb = emb_set(nu, mu)?;
    let critical_set: Vec<Rat> = emb.to_vec().into_iter().map(half_plus).collect();
    let formula = EmbSet::from_bounds(nu_min, nu_max);
    let literal_lo = nu_min_literal.clone();
    let literal_hi = int(w + v) - &literal_lo;
    let literal_bounds_match = match emb.bounds {
        Some((lo, hi)) => literal_lo == int(lo) && literal_hi == int(hi),
        None => literal_lo > literal_hi,
    };
    let parity_ok = (w + v).rem_euclid(2) == 0;
    Ok(CriticalData {
        w,
        v,
        gl1_degenerate: pn.gl1_degenerate,
        parity_ok,
        parity_consistent: parity_ok == !emb.is_empty(),
        center: rat(1 + w + v, 2),
        l,
        m,
        min_gap,
        nu_min,
        nu_min_literal,
        s_min: half_plus(nu_min),
        s_max: half_plus(nu_max),
        bijection_holds: emb.is_empty() || formula == emb,
        emb,
        critical_set,
        literal_bounds_match,
    })
}

/// One row of the table `{ν, s = ½ + ν, ν ∈ Emb?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub nu: i64,
    #[serde(with = "exact_arith::rat_serde")]
    pub s: Rat,
    pub in_emb: bool,
}

/// The table of twists `lo ≤ ν ≤ hi` with membership in `Emb(ν̌, μ)`.
pub fn critical_table(mu: &Weight, nu: &Weight, lo: i64, hi: i64) -> Result<Vec<TableRow>, WeightError> {
    let emb = emb_set(nu, mu)?;
    Ok((lo..=hi).map(|t| TableRow { nu: t, s: half_plus(t), in_emb: emb.contains(t) }).collect())
}
