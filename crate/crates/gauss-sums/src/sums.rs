//! Normalised Gauss sums, twisted character sums and the constant bundles built from them.

use exact_arith::par::{self, Strategy};
use exact_arith::{rat_serde, Cyclo, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::{all_characters, rat_residue, split_p, AddChar, MultChar};
use crate::GaussError;

/// `Σ_a χ(a)·ζ_{m}^{a·c}` over the units `a` of `χ`'s modulus, computed in one cyclotomic field.
fn character_sum(chi: &MultChar, m: u64, c: u64) -> Cyclo {
    let n = chi.root_base();
    let l = n.lcm(&m);
    let terms = chi.group().units().map(|a| {
        let e = chi.exponent_of(a).expect("unit");
        let k = (e * (l / n) + (a % m) * (c % m) % m * (l / m)) % l;
        (k as i64, Rat::one())
    });
    Cyclo::from_exponents(l, terms).minimize_conductor()
}

fn require_conductor(chi: &MultChar) -> Result<u32, GaussError> {
    match chi.conductor_exponent() {
        0 => Err(GaussError::TrivialConductor),
        s => Ok(s),
    }
}

/// The classical part `χ(f_χ)G(χ) = Σ_{a ∈ (Z/p^s)^×} χ(a)·ζ_{p^s}^a`, with `p^s` the conductor.
pub fn classical_gauss_sum(chi: &MultChar) -> Result<Cyclo, GaussError> {
    require_conductor(chi)?;
    let prim = chi.primitive();
    Ok(character_sum(&prim, prim.modulus(), 1))
}

/// The normalised Gauss sum `G(χ) = χ(ϖ)^{−s}·Σ_{a ∈ (Z/p^s)^×} χ(a)·ζ_{p^s}^a`.
pub fn gauss_sum(chi: &MultChar) -> Result<Cyclo, GaussError> {
    let s = require_conductor(chi)?;
    let classical = classical_gauss_sum(chi)?;
    let twist = chi.chi_p().pow(-(s as i64)).expect("χ(ϖ) is non-zero");
    Ok(&classical * &twist)
}

/// A twisted sum computed by direct summation together with its closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedSum {
    pub p: u64,
    pub level: u32,
    pub conductor_exponent: u32,
    #[serde(with = "rat_serde")]
    pub c: Rat,
    /// `ν_p(c)`, `None` for `c = 0`.
    pub valuation: Option<i64>,
    pub direct: Cyclo,
    pub closed_form: Cyclo,
    pub agrees: bool,
}

/// `Σ_{γ ∈ (Z/p^l)^×} χ(γ)·ψ(c·γ)` for `l ≥ s ≥ 1`, `ν_p(c) ≥ −l`.
///
/// The closed form vanishes unless `ν_p(c) = −s`; for `c = a·p^{−s}` it equals
/// `p^{l−s}·χ^{−1}(a)·χ(f_χ)G(χ)`. Both sides are computed and compared.
pub fn twisted_sum(chi: &MultChar, c: &Rat, level: u32) -> Result<TwistedSum, GaussError> {
    let s = require_conductor(chi)?;
    if level < s {
        return Err(GaussError::LevelBelowConductor { level, conductor: s });
    }
    let p = chi.p();
    let valuation = (!c.is_zero()).then(|| split_p(c, p).0);
    if valuation.is_some_and(|v| v < -(level as i64)) {
        return Err(GaussError::InvalidParameters(format!(
            "ψ(c·γ) is not well defined on (Z/{p}^{level})^× for c = {c}"
        )));
    }
    let psi = AddChar::new(p)?;
    let (m, a) = psi.exponent(c)?;
    let chi_l = chi.at_level(level)?;
    let direct = character_sum(&chi_l, m, a);

    let closed_form = match valuation {
        Some(v) if v == -(s as i64) => {
            let unit = c * &Rat::from_integer(BigInt::from(p).pow(s));
            let ps = p.pow(s);
            let residue = rat_residue(&unit, ps).expect("p-adic unit");
            let prim = chi.primitive();
            let inv = prim.inverse().value(residue as i64);
            let classical = character_sum(&prim, ps, 1);
            let factor = Rat::from_integer(BigInt::from(p).pow(level - s));
            (&inv * &classical).scale(&factor)
        }
        _ => Cyclo::zero(),
    };
    let agrees = direct == closed_form;
    Ok(TwistedSum { p, level, conductor_exponent: s, c: c.clone(), valuation, direct, closed_form, agrees })
}

/// The constants attached to the local and global Birch-type formulas for `GL_{n+1} × GL_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirchConstants {
    pub n: u32,
    pub q: u64,
    /// `N(f) = q^r`.
    pub r: u32,
    /// `N(f_χ) = q^s`.
    pub s: u32,
    pub classical_gauss: Cyclo,
    /// `∏_{ν=1}^n (1 − q^{−ν})^{−1}`.
    #[serde(with = "rat_serde")]
    pub delta: Rat,
    pub local_f_exponent: i64,
    pub local_fchi_exponent: i64,
    pub local_gauss_exponent: i64,
    pub global_f_exponent: i64,
    pub global_fchi_exponent: i64,
    pub global_gauss_exponent: i64,
    pub c_local: Cyclo,
    pub c_global: Cyclo,
}

/// `∏_{ν=1}^n (1 − q^{−ν})^{−1}`.
pub fn delta_factor(n: u32, q: u64) -> Rat {
    let q = Rat::from_integer(BigInt::from(q));
    (1..=n as i32).fold(Rat::one(), |acc, nu| acc / (Rat::one() - q.pow(-nu)))
}

fn q_pow(q: u64, e: i64) -> Rat {
    Rat::from_integer(BigInt::from(q)).pow(e as i32)
}

/// Build the local and global constants for level `f = p^r` and the conductor `p^s` of `χ`.
pub fn birch_constants(n: u32, r: u32, chi: &MultChar) -> Result<BirchConstants, GaussError> {
    let s = require_conductor(chi)?;
    if n == 0 {
        return Err(GaussError::InvalidParameters("n must be positive".into()));
    }
    if r < s {
        return Err(GaussError::LevelBelowConductor { level: r, conductor: s });
    }
    let q = chi.p();
    let ni = n as i64;
    let classical = classical_gauss_sum(chi)?;
    let delta = delta_factor(n, q);
    let (lf, lfc, lg) = (-(ni + 1) * ni * (ni - 1) / 6, -ni * (ni + 1) / 2, ni * (ni + 1) / 2);
    let (gf, gfc, gg) = (-ni * (ni - 1) * (ni - 2) / 6, -ni * (ni - 1) / 2, ni * (ni - 1) / 2);
    let norm = |e_f: i64, e_fc: i64| q_pow(q, r as i64 * e_f) * q_pow(q, s as i64 * e_fc);
    let c_local = classical.pow(lg).expect("non-zero").scale(&(&delta * &norm(lf, lfc)));
    let c_global = classical.pow(gg).expect("non-zero").scale(&norm(gf, gfc));
    Ok(BirchConstants {
        n,
        q,
        r,
        s,
        classical_gauss: classical,
        delta,
        local_f_exponent: lf,
        local_fchi_exponent: lfc,
        local_gauss_exponent: lg,
        global_f_exponent: gf,
        global_fchi_exponent: gfc,
        global_gauss_exponent: gg,
        c_local,
        c_global,
    })
}

/// Identities checked for one primitive character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussCheck {
    pub p: u64,
    pub conductor_exponent: u32,
    pub exponents: Vec<u64>,
    pub classical: Cyclo,
    /// `τ·conj(τ) = p^s` for the classical part `τ`.
    pub norm_ok: bool,
    /// `τ(χ)·τ(χ^{−1}) = χ(−1)·p^s`.
    pub inverse_ok: bool,
    /// `G(χ)·G(χ^{−1}) = χ(−1)·p^s·(χ(ϖ)χ^{−1}(ϖ))^{−s}` with the supplied `χ(ϖ)`.
    pub normalised_ok: bool,
}

impl GaussCheck {
    pub fn ok(&self) -> bool {
        self.norm_ok && self.inverse_ok && self.normalised_ok
    }
}

/// Check the norm and inversion identities for one character with non-trivial conductor.
pub fn check_gauss(chi: &MultChar) -> Result<GaussCheck, GaussError> {
    let s = require_conductor(chi)?;
    let prim = chi.primitive();
    let ps = Cyclo::from_int(prim.modulus() as i64);
    let tau = classical_gauss_sum(&prim)?;
    let inv = prim.inverse();
    let tau_inv = classical_gauss_sum(&inv)?;
    let sign = prim.value(-1);
    let norm_ok = &tau * &tau.conj() == ps;
    let inverse_ok = &tau * &tau_inv == &sign * &ps;
    let twist = (prim.chi_p() * inv.chi_p()).pow(-(s as i64)).expect("non-zero");
    let normalised_ok = &gauss_sum(&prim)? * &gauss_sum(&inv)? == &(&sign * &ps) * &twist;
    Ok(GaussCheck {
        p: prim.p(),
        conductor_exponent: s,
        exponents: prim.exponents().to_vec(),
        classical: tau,
        norm_ok,
        inverse_ok,
        normalised_ok,
    })
}

/// All primitive characters of conductor `p^s`, `1 ≤ s`, `p^s ≤ max_modulus`, for the given primes.
pub fn primitive_characters(primes: &[u64], max_modulus: u64) -> Result<Vec<MultChar>, GaussError> {
    let mut out = Vec::new();
    for &p in primes {
        let mut s = 1;
        while p.pow(s) <= max_modulus {
            out.extend(all_characters(p, s)?.into_iter().filter(MultChar::is_primitive));
            s += 1;
        }
    }
    Ok(out)
}

/// Run [`check_gauss`] over every primitive character of conductor at most `max_modulus`.
pub fn sweep_gauss(primes: &[u64], max_modulus: u64, strategy: Strategy) -> Result<Vec<GaussCheck>, GaussError> {
    let chars = primitive_characters(primes, max_modulus)?;
    par::map(strategy, &chars, check_gauss).into_iter().collect()
}

/// Outcome of the exhaustive twisted-sum sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwistedSweep {
    pub cases: usize,
    pub nonzero_cases: usize,
    pub failures: Vec<TwistedSum>,
}

/// For every character mod `p^l` (`1 ≤ l ≤ max_level`) with non-trivial conductor and every
/// `c = a/p^l`, `0 ≤ a < p^l`, compare the direct sum with its closed form. Both sides only
/// depend on `c` modulo `Z`, so this range is exhaustive.
pub fn sweep_twisted(p: u64, max_level: u32, strategy: Strategy) -> Result<TwistedSweep, GaussError> {
    let mut jobs = Vec::new();
    for l in 1..=max_level {
        for chi in all_characters(p, l)? {
            if chi.conductor_exponent() >= 1 {
                jobs.push((chi, l));
            }
        }
    }
    let results: Vec<Result<TwistedSweep, GaussError>> = par::map(strategy, &jobs, |(chi, l)| {
        let mut out = TwistedSweep::default();
        let pl = p.pow(*l);
        for a in 0..pl {
            let c = Rat::new(BigInt::from(a), BigInt::from(pl));
            let t = twisted_sum(chi, &c, *l)?;
            out.cases += 1;
            if !t.direct.is_zero() {
                out.nonzero_cases += 1;
            }
            if !t.agrees {
                out.failures.push(t);
            }
        }
        Ok(out)
    });
    let mut total = TwistedSweep::default();
    for r in results {
        let r = r?;
        total.cases += r.cases;
        total.nonzero_cases += r.nonzero_cases;
        total.failures.extend(r.failures);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rat;

    #[test]
    fn quadratic_squares() {
        let g5 = gauss_sum(&MultChar::quadratic(5).unwrap()).unwrap();
        assert_eq!(&g5 * &g5, Cyclo::from_int(5));
        let g3 = gauss_sum(&MultChar::quadratic(3).unwrap()).unwrap();
        assert_eq!(&g3 * &g3, Cyclo::from_int(-3));
    }

    #[test]
    fn trivial_conductor_rejected() {
        let chi = MultChar::trivial(3, 2).unwrap();
        assert_eq!(gauss_sum(&chi), Err(GaussError::TrivialConductor));
        assert_eq!(twisted_sum(&chi, &rat(1, 3), 2).unwrap_err(), GaussError::TrivialConductor);
    }

    #[test]
    fn delta_at_two() {
        assert_eq!(delta_factor(2, 2), rat(8, 3));
    }
}
