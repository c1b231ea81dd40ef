//! p-adic valuations of exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::{ArithError, Rat};

/// A p-adic valuation: an integer, or `+infinity` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PadicVal {
    Finite(i64),
    Infinite,
}

impl PadicVal {
    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinite => None,
        }
    }

    /// `true` iff the valuation is at least `k`.
    pub fn at_least(self, k: i64) -> bool {
        match self {
            PadicVal::Finite(v) => v >= k,
            PadicVal::Infinite => true,
        }
    }
}

impl Ord for PadicVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PadicVal::Infinite, PadicVal::Infinite) => Ordering::Equal,
            (PadicVal::Infinite, _) => Ordering::Greater,
            (_, PadicVal::Infinite) => Ordering::Less,
            (PadicVal::Finite(a), PadicVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PadicVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for PadicVal {
    type Output = PadicVal;
    fn add(self, rhs: PadicVal) -> PadicVal {
        match (self, rhs) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a + b),
            _ => PadicVal::Infinite,
        }
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for PadicVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PadicVal::Finite(v) => s.serialize_i64(*v),
            PadicVal::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Deterministic primality test by trial division (parameters here are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Valuation of a nonzero integer; `Infinite` for zero. Does not check primality.
pub fn valuation_int(x: &BigInt, p: u64) -> PadicVal {
    if x.is_zero() {
        return PadicVal::Infinite;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return PadicVal::Finite(v);
        }
        x = q;
        v += 1;
    }
}

/// Valuation of a rational without the primality check; for hot loops whose
/// prime was validated once up front.
pub fn valuation_unchecked(x: &Rat, p: u64) -> PadicVal {
    if x.is_zero() {
        return PadicVal::Infinite;
    }
    let num = valuation_int(x.numer(), p).finite().unwrap_or(0);
    let den = valuation_int(x.denom(), p).finite().unwrap_or(0);
    PadicVal::Finite(num - den)
}

/// Exact p-adic valuation of a rational; `v_p(0) = +infinity`.
pub fn valuation(x: &Rat, p: u64) -> Result<PadicVal, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(valuation_unchecked(x, p))
}

/// `true` iff `x` lies in `Z_(p)` (no `p` in the denominator).
pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    valuation_unchecked(x, p).at_least(0)
}
