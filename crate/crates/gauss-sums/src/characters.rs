//! Characters of `(Z/p^l)^×` and the unramified additive character of `Q_p`.

use std::fmt;
use std::sync::Arc;

use exact_arith::{is_prime, Cyclo, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::GaussError;

/// Largest modulus `p^l` for which unit groups are tabulated.
pub const MAX_MODULUS: u64 = 1 << 20;

/// The unit group `(Z/p^l)^×` with a fixed generating system and discrete-log table.
#[derive(Debug, PartialEq, Eq)]
pub struct UnitGroup {
    p: u64,
    level: u32,
    modulus: u64,
    /// `(generator, order)`; the group is the direct product of the cyclic groups they generate.
    gens: Vec<(u64, u64)>,
    /// `logs[a]` = exponents of `a` in the generators, `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

impl UnitGroup {
    pub fn new(p: u64, level: u32) -> Result<Arc<UnitGroup>, GaussError> {
        if !is_prime(p) {
            return Err(GaussError::NotPrime(p));
        }
        let modulus = p.checked_pow(level).filter(|&m| m <= MAX_MODULUS).ok_or(GaussError::TooLarge { p, level })?;
        let phi = if level == 0 { 1 } else { modulus / p * (p - 1) };
        let gens: Vec<(u64, u64)> = if level == 0 || (p == 2 && level == 1) {
            Vec::new()
        } else if p == 2 && level == 2 {
            vec![(3, 2)]
        } else if p == 2 {
            vec![(modulus - 1, 2), (5, modulus / 4)]
        } else {
            let g = (2..p).find(|&g| multiplicative_order(g, p) == p - 1).expect("primitive root exists");
            let g = if level >= 2 && pow_mod(g, p - 1, p * p) == 1 { g + p } else { g };
            vec![(g, phi)]
        };
        let mut logs = vec![None; modulus as usize];
        let mut exps = vec![0u64; gens.len()];
        loop {
            let a = gens.iter().zip(&exps).fold(1 % modulus, |acc, (&(g, _), &e)| {
                (acc as u128 * pow_mod(g, e, modulus) as u128 % modulus as u128) as u64
            });
            logs[a as usize] = Some(exps.clone());
            let mut i = 0;
            loop {
                if i == gens.len() {
                    let group = UnitGroup { p, level, modulus, gens, logs };
                    debug_assert_eq!(group.logs.iter().filter(|l| l.is_some()).count() as u64, phi);
                    return Ok(Arc::new(group));
                }
                exps[i] += 1;
                if exps[i] < gens[i].1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.gens.iter().map(|g| g.1).product()
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.gens
    }

    /// Representatives `0 ≤ a < p^l` of the units.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        self.logs.iter().enumerate().filter(|(_, l)| l.is_some()).map(|(a, _)| a as u64)
    }

    fn log(&self, a: u64) -> Option<&Vec<u64>> {
        self.logs[(a % self.modulus) as usize].as_ref()
    }
}

/// Reduce an integer modulo `m` into `[0, m)`.
pub fn reduce_int(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("fits")
}

/// For a `p`-integral rational `x` with `p ∤ den(x)`, the residue of `x` mod `m = p^k`.
pub fn rat_residue(x: &Rat, m: u64) -> Option<u64> {
    let den = reduce_int(x.denom(), m);
    let inv = modinv(den, m)?;
    Some((reduce_int(x.numer(), m) as u128 * inv as u128 % m as u128) as u64)
}

fn modinv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

/// A character `χ` of `(Z/p^l)^×` extended to a quasi-character of `Q_p^×`
/// by the value `χ(ϖ)` at the uniformiser `ϖ = p`.
#[derive(Clone, Debug)]
pub struct MultChar {
    group: Arc<UnitGroup>,
    /// `χ(g_i) = ζ_{ord_i}^{k_i}`.
    k: Vec<u64>,
    chi_p: Cyclo,
}

impl PartialEq for MultChar {
    fn eq(&self, other: &MultChar) -> bool {
        self.group.p == other.group.p && self.group.level == other.group.level && self.k == other.k && self.chi_p == other.chi_p
    }
}

impl Eq for MultChar {}

impl MultChar {
    /// The character with `χ(g_i) = ζ_{ord_i}^{k_i}` on the group's generators and `χ(ϖ) = 1`.
    pub fn new(group: Arc<UnitGroup>, k: Vec<u64>) -> Result<MultChar, GaussError> {
        if k.len() != group.gens.len() {
            return Err(GaussError::InvalidParameters(format!(
                "expected {} exponents, got {}",
                group.gens.len(),
                k.len()
            )));
        }
        let k = k.iter().zip(&group.gens).map(|(k, g)| k % g.1).collect();
        Ok(MultChar { group, k, chi_p: Cyclo::one() })
    }

    pub fn trivial(p: u64, level: u32) -> Result<MultChar, GaussError> {
        let group = UnitGroup::new(p, level)?;
        let k = vec![0; group.gens.len()];
        MultChar::new(group, k)
    }

    /// The quadratic (Legendre) character mod an odd prime `p`.
    pub fn quadratic(p: u64) -> Result<MultChar, GaussError> {
        if p == 2 {
            return Err(GaussError::InvalidParameters("the quadratic character mod 2 does not exist".into()));
        }
        let group = UnitGroup::new(p, 1)?;
        MultChar::new(group, vec![(p - 1) / 2])
    }

    /// Set the value `χ(ϖ)` (must be non-zero).
    pub fn with_chi_p(mut self, chi_p: Cyclo) -> Result<MultChar, GaussError> {
        if chi_p.is_zero() {
            return Err(GaussError::InvalidParameters("χ(ϖ) must be non-zero".into()));
        }
        self.chi_p = chi_p;
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.group.p
    }

    pub fn level(&self) -> u32 {
        self.group.level
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.k
    }

    pub fn chi_p(&self) -> &Cyclo {
        &self.chi_p
    }

    /// Exponent base `N` (the group exponent) such that all values are `N`-th roots of unity.
    pub fn root_base(&self) -> u64 {
        self.group.gens.iter().fold(1u64, |acc, g| acc.lcm(&g.1))
    }

    /// `e` with `χ(a) = ζ_N^e` (`N = root_base()`), or `None` if `a` is not a unit.
    pub fn exponent_of(&self, a: u64) -> Option<u64> {
        let n = self.root_base();
        let log = self.group.log(a)?;
        Some(log.iter().zip(&self.k).zip(&self.group.gens).fold(0u64, |acc, ((j, k), g)| {
            (acc + (j * k % g.1) * (n / g.1)) % n
        }))
    }

    /// `χ(a)` for an integer `a` (zero on non-units).
    pub fn value(&self, a: i64) -> Cyclo {
        let a = a.rem_euclid(self.group.modulus as i64) as u64;
        match self.exponent_of(a) {
            Some(e) => root(self.root_base(), e),
            None => Cyclo::zero(),
        }
    }

    /// `χ(x)` for `x ∈ Q^×` viewed in `Q_p^×`: `χ(p^v u) = χ(ϖ)^v χ(u)`.
    pub fn value_rat(&self, x: &Rat) -> Option<Cyclo> {
        if x.is_zero() {
            return None;
        }
        let (v, unit) = split_p(x, self.p());
        let residue = rat_residue(&unit, self.modulus())?;
        let chi_p = self.chi_p.pow(v).ok()?;
        Some(&self.value(residue as i64) * &chi_p)
    }

    /// Order of `χ` in the dual group.
    pub fn order(&self) -> u64 {
        self.k.iter().zip(&self.group.gens).fold(1u64, |acc, (k, g)| acc.lcm(&(g.1 / k.gcd(&g.1))))
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().all(|&k| k == 0)
    }

    /// The smallest `t` with `χ` trivial on `1 + p^t Z_p` (`0` for the trivial character).
    pub fn conductor_exponent(&self) -> u32 {
        let m = self.group.modulus;
        (0..=self.group.level)
            .find(|&t| {
                let step = self.p().pow(t);
                (1..=m).step_by(step as usize).map(|a| a % m).all(|a| self.exponent_of(a).map_or(true, |e| e == 0))
            })
            .unwrap_or(self.group.level)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor_exponent() == self.group.level
    }

    /// `χ^{−1}` (with `χ^{−1}(ϖ) = χ(ϖ)^{−1}`).
    pub fn inverse(&self) -> MultChar {
        let k = self.k.iter().zip(&self.group.gens).map(|(k, g)| (g.1 - k) % g.1).collect();
        MultChar { group: self.group.clone(), k, chi_p: self.chi_p.inv().expect("non-zero") }
    }

    /// The pointwise product `χ·χ′` on the same group.
    pub fn mul(&self, other: &MultChar) -> Result<MultChar, GaussError> {
        if self.group != other.group {
            return Err(GaussError::GroupMismatch);
        }
        let k = self.k.iter().zip(&other.k).zip(&self.group.gens).map(|((a, b), g)| (a + b) % g.1).collect();
        Ok(MultChar { group: self.group.clone(), k, chi_p: &self.chi_p * &other.chi_p })
    }

    /// The same quasi-character viewed on `(Z/p^L)^×`, for `L ≥` conductor exponent.
    pub fn at_level(&self, level: u32) -> Result<MultChar, GaussError> {
        let conductor = self.conductor_exponent();
        if level < conductor {
            return Err(GaussError::LevelBelowConductor { level, conductor });
        }
        if level == self.group.level {
            return Ok(self.clone());
        }
        let group = UnitGroup::new(self.p(), level)?;
        let n = self.root_base();
        let k = group
            .gens
            .iter()
            .map(|&(g, ord)| {
                let e = self.exponent_of(g % self.group.modulus).expect("generator is a unit");
                // ζ_N^e = ζ_ord^{e·ord/N}
                (e * ord / n) % ord
            })
            .collect();
        Ok(MultChar { group, k, chi_p: self.chi_p.clone() })
    }

    /// Reduce to the primitive character of level equal to the conductor exponent.
    pub fn primitive(&self) -> MultChar {
        self.at_level(self.conductor_exponent()).expect("conductor level")
    }
}

impl fmt::Display for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {}^{} k={:?} chi(p)={}", self.p(), self.level(), self.k, self.chi_p)
    }
}

#[derive(Serialize)]
struct MultCharWire<'a> {
    p: u64,
    level: u32,
    generators: Vec<u64>,
    exponents: &'a [u64],
    conductor_exponent: u32,
    order: u64,
    chi_p: &'a Cyclo,
}

impl Serialize for MultChar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MultCharWire {
            p: self.p(),
            level: self.level(),
            generators: self.group.gens.iter().map(|g| g.0).collect(),
            exponents: &self.k,
            conductor_exponent: self.conductor_exponent(),
            order: self.order(),
            chi_p: &self.chi_p,
        }
        .serialize(s)
    }
}

/// `ζ_N^e` in the smallest cyclotomic field containing it.
pub fn root(n: u64, e: u64) -> Cyclo {
    let g = n.gcd(&e).max(1);
    if e % n == 0 {
        return Cyclo::one();
    }
    Cyclo::root_of_unity(n / g, (e / g) as i64)
}

/// Split `x = p^v·u` with `u` a `p`-adic unit.
pub fn split_p(x: &Rat, p: u64) -> (i64, Rat) {
    let pb = BigInt::from(p);
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let mut v = 0i64;
    while !num.is_zero() && (&num % &pb).is_zero() {
        num /= &pb;
        v += 1;
    }
    while (&den % &pb).is_zero() {
        den /= &pb;
        v -= 1;
    }
    (v, Rat::new(num, den))
}

/// All characters of `(Z/p^l)^×` (with `χ(ϖ) = 1`), in lexicographic order of exponents.
pub fn all_characters(p: u64, level: u32) -> Result<Vec<MultChar>, GaussError> {
    let group = UnitGroup::new(p, level)?;
    let mut out = Vec::new();
    let mut k = vec![0u64; group.gens.len()];
    loop {
        out.push(MultChar { group: group.clone(), k: k.clone(), chi_p: Cyclo::one() });
        let mut i = k.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            k[i] += 1;
            if k[i] < group.gens[i].1 {
                break;
            }
            k[i] = 0;
        }
    }
}

/// The `index`-th character of `all_characters(p, level)`.
pub fn character_by_index(p: u64, level: u32, index: usize) -> Result<MultChar, GaussError> {
    let all = all_characters(p, level)?;
    let count = all.len();
    all.into_iter().nth(index).ok_or(GaussError::IndexOutOfRange { index, count, modulus: p.pow(level) })
}

/// The unramified additive character `ψ` of `Q_p`: `ψ(a/p^t) = ζ_{p^t}^a`, trivial on `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AddChar {
    pub p: u64,
}

impl AddChar {
    pub fn new(p: u64) -> Result<AddChar, GaussError> {
        if !is_prime(p) {
            return Err(GaussError::NotPrime(p));
        }
        Ok(AddChar { p })
    }

    /// `(p^t, a)` with `ψ(x) = ζ_{p^t}^a`, `0 ≤ a < p^t` (`t = 0` when `x ∈ Z_p`).
    pub fn exponent(&self, x: &Rat) -> Result<(u64, u64), GaussError> {
        if x.is_zero() {
            return Ok((1, 0));
        }
        let (v, unit) = split_p(x, self.p);
        if v >= 0 {
            return Ok((1, 0));
        }
        let m = u32::try_from(-v)
            .ok()
            .and_then(|t| self.p.checked_pow(t))
            .ok_or_else(|| GaussError::NotPAdicRational(x.to_string()))?;
        let a = rat_residue(&unit, m).ok_or_else(|| GaussError::NotPAdicRational(x.to_string()))?;
        Ok((m, a))
    }

    pub fn eval(&self, x: &Rat) -> Result<Cyclo, GaussError> {
        let (m, a) = self.exponent(x)?;
        Ok(root(m, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rat;

    #[test]
    fn group_orders() {
        for (p, l, order) in [(2, 0, 1), (2, 1, 1), (2, 2, 2), (2, 3, 4), (2, 5, 16), (3, 1, 2), (3, 3, 18), (5, 2, 20), (7, 1, 6)] {
            let g = UnitGroup::new(p, l).unwrap();
            assert_eq!(g.order(), order, "p={p} l={l}");
            assert_eq!(g.units().count() as u64, order);
            assert_eq!(all_characters(p, l).unwrap().len() as u64, order);
        }
    }

    #[test]
    fn multiplicativity_and_conductors() {
        for (p, l) in [(2, 4), (3, 2), (5, 2)] {
            for chi in all_characters(p, l).unwrap() {
                let m = chi.modulus() as i64;
                for a in 1..m {
                    for b in 1..m {
                        assert_eq!(chi.value(a * b), &chi.value(a) * &chi.value(b));
                    }
                }
                let t = chi.conductor_exponent();
                let prim = chi.primitive();
                assert_eq!(prim.level(), t);
                for a in 1..m {
                    if a % p as i64 != 0 {
                        assert_eq!(prim.value(a), chi.value(a));
                    }
                }
            }
        }
        let conductors: Vec<u32> = all_characters(2, 3).unwrap().iter().map(MultChar::conductor_exponent).collect();
        let mut sorted = conductors.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 2, 3, 3]);
    }

    #[test]
    fn quadratic_is_legendre() {
        let chi = MultChar::quadratic(5).unwrap();
        let vals: Vec<Cyclo> = (1..5).map(|a| chi.value(a)).collect();
        assert_eq!(vals, vec![Cyclo::one(), -Cyclo::one(), -Cyclo::one(), Cyclo::one()]);
        assert_eq!(chi.order(), 2);
    }

    #[test]
    fn additive_character() {
        let psi = AddChar::new(3).unwrap();
        assert_eq!(psi.eval(&rat(5, 1)).unwrap(), Cyclo::one());
        assert_eq!(psi.eval(&rat(1, 3)).unwrap(), Cyclo::root_of_unity(3, 1));
        assert_eq!(psi.eval(&rat(1, 6)).unwrap(), Cyclo::root_of_unity(3, 2));
        for (x, y) in [(rat(1, 9), rat(2, 3)), (rat(5, 27), rat(-7, 9)), (rat(1, 2), rat(1, 3))] {
            assert_eq!(psi.eval(&(&x + &y)).unwrap(), &psi.eval(&x).unwrap() * &psi.eval(&y).unwrap());
        }
    }

    #[test]
    fn value_at_rationals() {
        let chi = MultChar::quadratic(3).unwrap().with_chi_p(Cyclo::from_int(-1)).unwrap();
        assert_eq!(chi.value_rat(&rat(2, 3)).unwrap(), Cyclo::one());
        assert_eq!(chi.value_rat(&rat(1, 2)).unwrap(), -Cyclo::one());
    }
}
