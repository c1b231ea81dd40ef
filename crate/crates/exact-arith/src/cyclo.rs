//! Cyclotomic fields `Q(zeta_m)` with canonical reduced power-basis representatives.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::padic::{valuation_unchecked, PadicVal};
use crate::rat::{fmt_rat, parse_rat};
use crate::{ArithError, Rat};

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (lowest degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().expect("cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    phi_cache()
        .lock()
        .expect("cache poisoned")
        .insert(m, Arc::clone(&poly));
    poly
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division not exact");
    quo
}

/// Reduce `sum poly[i] zeta_m^i` (any length) to the canonical representative.
fn reduce(m: u64, poly: Vec<Rat>) -> Vec<Rat> {
    let mu = m as usize;
    let mut folded = if poly.len() <= mu {
        let mut p = poly;
        p.resize(mu, Rat::zero());
        p
    } else {
        let mut f = vec![Rat::zero(); mu];
        for (i, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                f[i % mu] += c;
            }
        }
        f
    };
    let phi = cyclotomic_polynomial(m);
    let k = phi.len() - 1;
    for i in (k..mu).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[i], Rat::zero());
        for (j, pj) in phi.iter().enumerate().take(k) {
            if !pj.is_zero() {
                folded[i - k + j] -= &c * Rat::from_integer(pj.clone());
            }
        }
    }
    folded.truncate(k);
    folded
}

/// An element `sum c_i zeta_m^i` of `Q(zeta_m)`, stored reduced modulo `Phi_m`
/// (exactly `phi(m)` coefficients). Arithmetic between different conductors
/// lifts both operands to `Q(zeta_lcm)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    m: u64,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    /// Build from a canonical coefficient vector of length `phi(m)`.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rat>) -> Result<Cyclo, ArithError> {
        let expected = euler_phi(m) as usize;
        if coeffs.len() != expected {
            return Err(ArithError::BadCoefficientLength { m, expected, got: coeffs.len() });
        }
        Ok(Cyclo { m, coeffs })
    }

    /// Build from an arbitrary polynomial in `zeta_m` (reduced on the fly).
    pub fn from_poly(m: u64, poly: Vec<Rat>) -> Cyclo {
        Cyclo { m, coeffs: reduce(m, poly) }
    }

    /// Build `sum c * zeta_m^k` from (exponent, coefficient) pairs; exponents may be negative.
    pub fn from_exponents<I: IntoIterator<Item = (i64, Rat)>>(m: u64, terms: I) -> Cyclo {
        let mut folded = vec![Rat::zero(); m as usize];
        for (k, c) in terms {
            folded[k.rem_euclid(m as i64) as usize] += c;
        }
        Cyclo::from_poly(m, folded)
    }

    /// The rational `r` viewed in `Q(zeta_1) = Q`.
    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo { m: 1, coeffs: vec![r] }
    }

    /// The integer `n`.
    pub fn from_int(n: i64) -> Cyclo {
        Cyclo::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Cyclo {
        Cyclo::from_int(0)
    }

    pub fn one() -> Cyclo {
        Cyclo::from_int(1)
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Cyclo {
        Cyclo::from_exponents(m, [(k, Rat::one())])
    }

    /// The conductor `m` this element is currently stored at.
    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Canonical coefficients in the power basis `1, zeta, ..., zeta^{phi(m)-1}`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rat().is_some_and(|r| r.is_one())
    }

    /// The rational value if the element lies in `Q`.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    /// Re-express in `Q(zeta_l)`; requires `m | l`.
    pub fn lift(&self, l: u64) -> Cyclo {
        assert!(l % self.m == 0, "conductor {} does not divide {}", self.m, l);
        if l == self.m {
            return self.clone();
        }
        let step = (l / self.m) as usize;
        let mut poly = vec![Rat::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclo::from_poly(l, poly)
    }

    /// Re-express at the smallest conductor dividing the current one that contains
    /// the element (purely cosmetic; equality never depends on it).
    pub fn minimize_conductor(&self) -> Cyclo {
        if let Some(r) = self.to_rat() {
            return Cyclo::from_rat(r);
        }
        let mut divisors: Vec<u64> = (1..self.m).filter(|d| self.m % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            let step = self.m / d;
            // Candidate: the element is a polynomial in zeta_m^step; try to read it off.
            let mut poly = vec![Rat::zero(); d as usize];
            let lifted_exps = self.expand_exponents();
            let mut ok = true;
            for (e, c) in lifted_exps.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if e as u64 % step != 0 {
                    ok = false;
                    break;
                }
                poly[(e as u64 / step) as usize] = c.clone();
            }
            if ok {
                let cand = Cyclo::from_poly(d, poly);
                if &cand == self {
                    return cand;
                }
            }
        }
        self.clone()
    }

    // Representation as a vector over all m exponents using the canonical basis.
    fn expand_exponents(&self) -> Vec<Rat> {
        let mut v = self.coeffs.clone();
        v.resize(self.m as usize, Rat::zero());
        v
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.lift(l), b.lift(l))
    }

    fn add_ref(&self, other: &Cyclo) -> Cyclo {
        if self.m == other.m {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclo { m: self.m, coeffs };
        }
        let (a, b) = Cyclo::common(self, other);
        a.add_ref(&b)
    }

    fn mul_ref(&self, other: &Cyclo) -> Cyclo {
        if let Some(r) = self.to_rat() {
            return other.scale(&r);
        }
        if let Some(r) = other.to_rat() {
            return self.scale(&r);
        }
        if self.m != other.m {
            let (a, b) = Cyclo::common(self, other);
            return a.mul_ref(&b);
        }
        let k = self.coeffs.len();
        let mut prod = vec![Rat::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclo::from_poly(self.m, prod)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// The Galois automorphism `zeta_m -> zeta_m^k` (`k` coprime to `m`).
    pub fn galois(&self, k: i64) -> Cyclo {
        let m = self.m as i64;
        debug_assert_eq!(k.rem_euclid(m).gcd(&m), 1, "Galois exponent must be a unit");
        Cyclo::from_exponents(
            self.m,
            self.coeffs.iter().enumerate().map(|(i, c)| ((i as i64) * k, c.clone())),
        )
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    /// Field norm down to `Q` and the product of the non-identity conjugates.
    fn norm_and_cofactor(&self) -> (Rat, Cyclo) {
        let m = self.m as i64;
        let mut cof = Cyclo::one();
        for k in 2..m.max(2) {
            if k.gcd(&m) == 1 {
                cof = &cof * &self.galois(k);
            }
        }
        let norm = (self * &cof).to_rat().expect("norm of a cyclotomic element is rational");
        (norm, cof)
    }

    /// Field norm `N_{Q(zeta_m)/Q}`.
    pub fn norm(&self) -> Rat {
        self.norm_and_cofactor().0
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Cyclo, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.to_rat() {
            return Ok(Cyclo::from_rat(r.recip()));
        }
        let (norm, cof) = self.norm_and_cofactor();
        Ok(cof.scale(&norm.recip()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Cyclo, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Minimum p-adic valuation of the power-basis coefficients (`Infinite` for zero).
    /// Non-negative exactly when the element lies in `Z_(p)[zeta_m]`.
    pub fn min_coeff_valuation(&self, p: u64) -> PadicVal {
        self.coeffs
            .iter()
            .map(|c| valuation_unchecked(c, p))
            .min()
            .unwrap_or(PadicVal::Infinite)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclo::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl From<Rat> for Cyclo {
    fn from(r: Rat) -> Cyclo {
        Cyclo::from_rat(r)
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Cyclo {
        Cyclo::from_int(n)
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: &'a Cyclo) -> Cyclo {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Cyclo {
    fn product<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rat() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.m)?,
                _ => write!(f, "({c})*z{}^{i}", self.m)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloWire { m: self.m, coeffs: self.coeffs.iter().map(fmt_rat).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Cyclo, D::Error> {
        let wire = CycloWire::deserialize(d)?;
        if wire.m == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Cyclo::from_coeffs(wire.m, coeffs).map_err(D::Error::custom)
    }
}
