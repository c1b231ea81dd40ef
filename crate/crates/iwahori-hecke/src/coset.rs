//! Right cosets `g K` and finite formal sums of them.

use std::collections::HashMap;
use std::fmt;

use exact_arith::padic::valuation_unchecked;
use exact_arith::par::{self, Strategy};
use exact_arith::{fmt_rat, Rat, RatMatrix};
use gln_matrices::iwahori_member;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::HeckeError;

/// The compact open subgroup `K`: `GL_n(Z_p)` when `r = 0`, the Iwahori subgroup of
/// level `p^r` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Level {
    pub n: usize,
    pub p: u64,
    pub r: u32,
}

impl Level {
    pub fn new(n: usize, p: u64, r: u32) -> Result<Level, HeckeError> {
        if n == 0 {
            return Err(HeckeError::InvalidParameters("n must be positive".into()));
        }
        if !exact_arith::is_prime(p) {
            return Err(HeckeError::InvalidParameters(format!("{p} is not prime")));
        }
        Ok(Level { n, p, r })
    }

    /// The same rank and prime at spherical level.
    pub fn spherical(self) -> Level {
        Level { r: 0, ..self }
    }

    /// `g in K`.
    pub fn contains(&self, g: &RatMatrix) -> bool {
        iwahori_member(g, self.p, self.r)
    }

    /// The residue cardinality `q = p` as a rational.
    pub fn q(&self) -> Rat {
        Rat::from_integer(self.p.into())
    }
}

/// A right coset `g K`, stored through a representative and its inverse.
#[derive(Debug, Clone)]
pub struct Coset {
    rep: RatMatrix,
    inv: RatMatrix,
}

impl Coset {
    pub fn new(rep: RatMatrix) -> Result<Coset, HeckeError> {
        let inv = rep.inverse()?;
        Ok(Coset { rep, inv })
    }

    pub fn rep(&self) -> &RatMatrix {
        &self.rep
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inv
    }

    /// `x in g K`, i.e. `g^{-1} x in K`.
    pub fn contains(&self, x: &RatMatrix, level: &Level) -> bool {
        level.contains(&self.inv.mul(x))
    }

    /// Bucket key invariant under right multiplication by `K`: the valuation of the
    /// determinant.
    fn key(&self, p: u64) -> i64 {
        valuation_unchecked(&self.rep.det(), p).finite().unwrap_or(i64::MAX)
    }
}

/// `a K = b K`.
pub fn coset_equal(a: &Coset, b: &Coset, level: &Level) -> bool {
    a.contains(b.rep(), level)
}

/// A finite formal sum `sum c_i g_i K` with distinct cosets and nonzero coefficients.
#[derive(Debug, Clone)]
pub struct CosetSum {
    level: Level,
    terms: Vec<(Coset, Rat)>,
    buckets: HashMap<i64, Vec<usize>>,
}

impl CosetSum {
    pub fn zero(level: Level) -> CosetSum {
        CosetSum { level, terms: Vec::new(), buckets: HashMap::new() }
    }

    /// The unit `1 K`.
    pub fn unit(level: Level) -> CosetSum {
        let mut s = CosetSum::zero(level);
        s.add_term(RatMatrix::identity(level.n), Rat::one()).expect("identity is invertible");
        s
    }

    /// Sum of the cosets of the given representatives, each with coefficient one.
    pub fn from_reps<I: IntoIterator<Item = RatMatrix>>(level: Level, reps: I) -> Result<CosetSum, HeckeError> {
        let mut s = CosetSum::zero(level);
        for g in reps {
            s.add_term(g, Rat::one())?;
        }
        Ok(s)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Number of distinct cosets.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coset, &Rat)> {
        self.terms.iter().map(|(c, x)| (c, x))
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> Rat {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// Index of the term whose coset contains `g`, if any.
    pub fn find(&self, g: &RatMatrix) -> Option<usize> {
        let probe = Coset::new(g.clone()).ok()?;
        self.find_coset(&probe)
    }

    fn find_coset(&self, c: &Coset) -> Option<usize> {
        let bucket = self.buckets.get(&c.key(self.level.p))?;
        bucket.iter().copied().find(|&i| coset_equal(&self.terms[i].0, c, &self.level))
    }

    /// Coefficient of the coset `g K` (zero when absent).
    pub fn coefficient(&self, g: &RatMatrix) -> Rat {
        self.find(g).map(|i| self.terms[i].1.clone()).unwrap_or_else(Rat::zero)
    }

    /// Add `c * g K`, merging with an equal coset if present.
    pub fn add_term(&mut self, g: RatMatrix, c: Rat) -> Result<(), HeckeError> {
        if g.rows() != self.level.n || !g.is_square() {
            return Err(HeckeError::InvalidParameters(format!(
                "representative of size {}x{} in rank {}",
                g.rows(),
                g.cols(),
                self.level.n
            )));
        }
        let coset = Coset::new(g)?;
        self.add_coset(coset, c);
        Ok(())
    }

    /// Add `g K` with coefficient one unless that coset is already present.
    /// Returns whether the coset was new.
    pub fn insert_distinct(&mut self, g: RatMatrix) -> Result<bool, HeckeError> {
        let coset = Coset::new(g)?;
        if self.find_coset(&coset).is_some() {
            return Ok(false);
        }
        self.add_coset(coset, Rat::one());
        Ok(true)
    }

    fn add_coset(&mut self, coset: Coset, c: Rat) {
        if c.is_zero() {
            return;
        }
        if let Some(i) = self.find_coset(&coset) {
            self.terms[i].1 += c;
            if self.terms[i].1.is_zero() {
                self.terms.remove(i);
                self.reindex();
            }
            return;
        }
        let key = coset.key(self.level.p);
        self.buckets.entry(key).or_default().push(self.terms.len());
        self.terms.push((coset, c));
    }

    fn reindex(&mut self) {
        self.buckets.clear();
        for (i, (c, _)) in self.terms.iter().enumerate() {
            self.buckets.entry(c.key(self.level.p)).or_default().push(i);
        }
    }

    /// `self + other`.
    pub fn add(&self, other: &CosetSum) -> Result<CosetSum, HeckeError> {
        if self.level != other.level {
            return Err(HeckeError::LevelMismatch);
        }
        let mut s = self.clone();
        for (c, x) in &other.terms {
            s.add_coset(c.clone(), x.clone());
        }
        Ok(s)
    }

    /// `s * self`.
    pub fn scale(&self, s: &Rat) -> CosetSum {
        if s.is_zero() {
            return CosetSum::zero(self.level);
        }
        let mut out = self.clone();
        for t in &mut out.terms {
            t.1 *= s;
        }
        out
    }

    /// `self - other`.
    pub fn sub(&self, other: &CosetSum) -> Result<CosetSum, HeckeError> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Convolution `(sum a_i g_i K)(sum b_j h_j K) = sum a_i b_j g_i h_j K`.
    pub fn convolve(&self, other: &CosetSum) -> Result<CosetSum, HeckeError> {
        self.convolve_with(other, Strategy::default())
    }

    /// [`CosetSum::convolve`] with an explicit execution strategy for the products.
    pub fn convolve_with(&self, other: &CosetSum, strategy: Strategy) -> Result<CosetSum, HeckeError> {
        if self.level != other.level {
            return Err(HeckeError::LevelMismatch);
        }
        let products = par::map(strategy, &self.terms, |(g, a)| {
            other
                .terms
                .iter()
                .map(|(h, b)| {
                    let rep = g.rep.mul(&h.rep);
                    let inv = h.inv.mul(&g.inv);
                    (Coset { rep, inv }, a * b)
                })
                .collect::<Vec<_>>()
        });
        let mut out = CosetSum::zero(self.level);
        for (c, x) in products.into_iter().flatten() {
            out.add_coset(c, x);
        }
        Ok(out)
    }

    /// Equality as formal sums (same cosets with the same coefficients).
    pub fn same_as(&self, other: &CosetSum) -> bool {
        self.level == other.level
            && self.len() == other.len()
            && self.terms.iter().all(|(c, x)| other.find_coset(c).is_some_and(|i| &other.terms[i].1 == x))
    }

    /// The terms of `self - other` split by sign, as printable strings.
    pub fn symmetric_difference(&self, other: &CosetSum) -> (Vec<String>, Vec<String>) {
        let diff = match self.sub(other) {
            Ok(d) => d,
            Err(_) => return (vec!["<level mismatch>".into()], vec![]),
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (c, x) in &diff.terms {
            let s = format!("{} * {:?}", fmt_rat(&num_traits::Signed::abs(x)), c.rep.to_strings());
            if x > &Rat::zero() {
                left.push(s);
            } else {
                right.push(s);
            }
        }
        (left, right)
    }

    /// Reinterpret the sum at another level (the representatives are kept).
    pub(crate) fn relevel(&self, level: Level) -> Result<CosetSum, HeckeError> {
        let mut s = CosetSum::zero(level);
        for (c, x) in &self.terms {
            s.add_term(c.rep.clone(), x.clone())?;
        }
        Ok(s)
    }

    /// Representatives paired with coefficients.
    pub fn to_pairs(&self) -> Vec<(RatMatrix, Rat)> {
        self.terms.iter().map(|(c, x)| (c.rep.clone(), x.clone())).collect()
    }
}

/// Convolution of two coset sums.
pub fn convolve(a: &CosetSum, b: &CosetSum) -> Result<CosetSum, HeckeError> {
    a.convolve(b)
}

#[derive(Serialize)]
struct TermOut<'a> {
    matrix: &'a RatMatrix,
    coefficient: String,
}

impl Serialize for CosetSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (c, x) in &self.terms {
            seq.serialize_element(&TermOut { matrix: &c.rep, coefficient: fmt_rat(x) })?;
        }
        seq.end()
    }
}

impl fmt::Display for CosetSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}K", fmt_rat(x), c.rep.to_strings())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lvl() -> Level {
        Level::new(2, 2, 1).unwrap()
    }

    #[test]
    fn documented_equalities() {
        let l = lvl();
        let a = Coset::new(RatMatrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        let b = Coset::new(RatMatrix::from_i64(&[&[2, 2], &[0, 1]])).unwrap();
        let c = Coset::new(RatMatrix::from_i64(&[&[2, 1], &[0, 1]])).unwrap();
        assert!(coset_equal(&a, &a, &l));
        assert!(coset_equal(&a, &b, &l));
        assert!(!coset_equal(&a, &c, &l));
    }

    #[test]
    fn singular_rep_is_an_error() {
        let mut s = CosetSum::zero(lvl());
        assert!(s.add_term(RatMatrix::from_i64(&[&[1, 1], &[1, 1]]), Rat::one()).is_err());
    }

    #[test]
    fn folding_and_cancellation() {
        let l = lvl();
        let mut s = CosetSum::zero(l);
        s.add_term(RatMatrix::from_i64(&[&[2, 0], &[0, 1]]), Rat::one()).unwrap();
        s.add_term(RatMatrix::from_i64(&[&[2, 4], &[0, 3]]), Rat::one()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.total(), Rat::from_integer(2.into()));
        let z = s.sub(&s).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn unit_is_neutral() {
        let l = lvl();
        let s = CosetSum::from_reps(
            l,
            [RatMatrix::from_i64(&[&[2, 0], &[0, 1]]), RatMatrix::from_i64(&[&[2, 1], &[0, 1]])],
        )
        .unwrap();
        let u = CosetSum::unit(l);
        assert!(u.convolve(&s).unwrap().same_as(&s));
        assert!(s.convolve(&u).unwrap().same_as(&s));
    }

    #[test]
    fn serializes_as_term_list() {
        let s = CosetSum::unit(lvl());
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v[0]["coefficient"], "1/1");
        assert_eq!(v[0]["matrix"][0][0], "1/1");
    }
}
