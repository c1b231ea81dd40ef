//! Multivariate Laurent polynomials over cyclotomic fields and square matrices over them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::{ArithError, Cyclo, Rat, RatMatrix};

fn registry() -> &'static Mutex<Vec<String>> {
    static NAMES: OnceLock<Mutex<Vec<String>>> = OnceLock::new();
    NAMES.get_or_init(|| Mutex::new(Vec::new()))
}

/// A globally named Laurent variable (interned).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Intern `name`; the same name always yields the same variable.
    pub fn new(name: &str) -> Var {
        let mut names = registry().lock().expect("variable registry poisoned");
        if let Some(i) = names.iter().position(|n| n == name) {
            return Var(i as u32);
        }
        names.push(name.to_string());
        Var(names.len() as u32 - 1)
    }

    pub fn name(self) -> String {
        registry().lock().expect("variable registry poisoned")[self.0 as usize].clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A monomial `prod v^e` with nonzero integer exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var_pow(v: Var, e: i64) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i64)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    if ea + eb != 0 {
                        out.push((a, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    out.push((a, ea));
                    i += 1;
                }
                (Some(_), Some(&(b, eb))) => {
                    out.push((b, eb));
                    j += 1;
                }
                (Some(&x), None) => {
                    out.push(x);
                    i += 1;
                }
                (None, Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial with `Cyclo` coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Cyclo>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Cyclo::one())
    }

    pub fn constant(c: Cyclo) -> LaurentPoly {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn from_rat(r: Rat) -> LaurentPoly {
        LaurentPoly::constant(Cyclo::from_rat(r))
    }

    pub fn from_int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(Cyclo::from_int(n))
    }

    /// `c * m`.
    pub fn term(c: Cyclo, m: Monomial) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// The variable named `name`.
    pub fn var(name: &str) -> LaurentPoly {
        LaurentPoly::var_pow(Var::new(name), 1)
    }

    /// `v^e`.
    pub fn var_pow(v: Var, e: i64) -> LaurentPoly {
        LaurentPoly::term(Cyclo::one(), Monomial::var_pow(v, e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some((c, m))` iff the polynomial is a single term `c*m`, i.e. a unit of the ring.
    pub fn as_unit(&self) -> Option<(Cyclo, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    /// Inverse of a unit (a single nonzero term).
    pub fn inv_unit(&self) -> Result<LaurentPoly, ArithError> {
        let (c, m) = self
            .as_unit()
            .ok_or_else(|| ArithError::NonUnitDeterminant { det: self.to_string() })?;
        Ok(LaurentPoly::term(c.inv()?, m.inv()))
    }

    pub fn scale(&self, c: &Cyclo) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Integer power (negative powers only for units).
    pub fn pow(&self, e: i64) -> Result<LaurentPoly, ArithError> {
        let base = if e < 0 { self.inv_unit()? } else { self.clone() };
        let mut acc = LaurentPoly::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Drop every term whose exponent of `v` is `>= bound` (reduction modulo `v^bound`
    /// for polynomials with non-negative `v`-exponents).
    pub fn truncate(&self, v: Var, bound: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Minimal exponent of `v` over all terms (`None` for zero).
    pub fn min_degree(&self, v: Var) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Evaluate at rational values of every variable.
    pub fn eval(&self, values: &HashMap<Var, Rat>) -> Result<Cyclo, ArithError> {
        let mut acc = Cyclo::zero();
        for (m, c) in &self.terms {
            let mut x = Rat::one();
            for &(v, e) in m.factors() {
                let val = values.get(&v).ok_or_else(|| ArithError::UnboundVariable(v.name()))?;
                if val.is_zero() && e < 0 {
                    return Err(ArithError::DivisionByZero);
                }
                let pw = num_traits::pow::pow(val.clone(), e.unsigned_abs() as usize);
                x *= if e < 0 { pw.recip() } else { pw };
            }
            acc = &acc + &c.scale(&x);
        }
        Ok(acc)
    }

    /// Evaluate to a rational (errors if the result is irrational).
    pub fn eval_rat(&self, values: &HashMap<Var, Rat>) -> Result<Rat, ArithError> {
        let c = self.eval(values)?;
        c.to_rat().ok_or_else(|| ArithError::NotRational(c.to_string()))
    }

    fn add_assign_term(&mut self, m: Monomial, c: Cyclo) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_assign_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// A square matrix over the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> LaurentPoly>(n: usize, mut f: F) -> LaurentMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        LaurentMatrix { n, entries }
    }

    pub fn zeros(n: usize) -> LaurentMatrix {
        LaurentMatrix::from_fn(n, |_, _| LaurentPoly::zero())
    }

    pub fn identity(n: usize) -> LaurentMatrix {
        LaurentMatrix::from_fn(n, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn diag(d: Vec<LaurentPoly>) -> LaurentMatrix {
        let n = d.len();
        let mut m = LaurentMatrix::zeros(n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rat_matrix(a: &RatMatrix) -> LaurentMatrix {
        assert!(a.is_square());
        LaurentMatrix::from_fn(a.rows(), |i, j| LaurentPoly::from_rat(a[(i, j)].clone()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> LaurentMatrix {
        LaurentMatrix::from_rat_matrix(&RatMatrix::from_i64(rows))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentPoly) {
        self.entries[i * self.n + j] = x;
    }

    pub fn transpose(&self) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, f: F) -> LaurentMatrix {
        LaurentMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> LaurentMatrix {
        self.map(|x| x * c)
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, other.n);
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in product");
        let n = self.n;
        LaurentMatrix::from_fn(n, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Determinant via Laplace expansion memoised over column subsets (`O(n 2^n)`).
    pub fn det(&self) -> LaurentPoly {
        det_rows(self.n, |i, j| self.get(i, j))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> LaurentPoly {
        let rows: Vec<usize> = (0..self.n).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&c| c != skip_col).collect();
        det_rows(self.n - 1, |i, j| self.get(rows[i], cols[j]))
    }

    /// Exact inverse; requires the determinant to be a unit (a single term).
    pub fn inverse(&self) -> Result<LaurentMatrix, ArithError> {
        let det_inv = self.det().inv_unit()?;
        let n = self.n;
        if n == 1 {
            return Ok(LaurentMatrix::diag(vec![det_inv]));
        }
        Ok(LaurentMatrix::from_fn(n, |i, j| {
            let cof = self.minor(j, i);
            let signed = if (i + j) % 2 == 0 { cof } else { -&cof };
            &signed * &det_inv
        }))
    }

    /// Evaluate every entry at rational values.
    pub fn eval_rat(&self, values: &HashMap<Var, Rat>) -> Result<RatMatrix, ArithError> {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval_rat(values)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RatMatrix::from_rows(rows)
    }

    /// Entry-wise truncation modulo `v^bound` (see [`LaurentPoly::truncate`]).
    pub fn truncate(&self, v: Var, bound: i64) -> LaurentMatrix {
        self.map(|x| x.truncate(v, bound))
    }

    /// Entries rendered as strings (for witnesses in reports).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

fn det_rows<'a, F: Fn(usize, usize) -> &'a LaurentPoly>(n: usize, a: F) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let full = 1usize << n;
    let mut dp: Vec<LaurentPoly> = vec![LaurentPoly::zero(); full];
    dp[0] = LaurentPoly::one();
    for mask in 1..full {
        let k = mask.count_ones() as usize;
        let row = k - 1;
        let mut acc = LaurentPoly::zero();
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = a(row, c);
            let rest = &dp[mask ^ (1 << c)];
            if entry.is_zero() || rest.is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let prod = entry * rest;
            acc = if above % 2 == 0 { &acc + &prod } else { &acc - &prod };
        }
        dp[mask] = acc;
    }
    dp.pop().expect("non-empty table")
}
