//! Brute-force index counts:
//! `(U_n(O) : t_(f) U_n(O) t_(f)^{-1}) = N(f)^{(n+1)n(n-1)/6}` and
//! `(I_{n-1}^(m) : K(f)) = N(f)^{((n+1)n(n-1) + n(n-1)(n-2))/6}` where
//! `K(f) = { g in I_{n-1}^(m) : h^(f)^{-1} j(g) h^(f) in I_n^(m) }`.

use exact_arith::padic::valuation_unchecked;
use exact_arith::par::{self, Strategy};
use exact_arith::{int, Rat, RatMatrix};
use num_traits::Zero;
use serde::Serialize;

use crate::HeckeError;

/// Counted indices together with the closed formulas.
#[derive(Debug, Clone, Serialize)]
pub struct IndexCounts {
    pub n: usize,
    pub p: u64,
    /// Level `m` of the Iwahori subgroups.
    pub m: u32,
    /// `f = p^nu`.
    pub nu: u32,
    pub unipotent_index: u64,
    pub unipotent_formula: u64,
    pub gamma_index: u64,
    pub gamma_formula: u64,
    /// Modulus exponent `M` used for the enumeration of `GL_{n-1}(Z/p^M)`.
    pub gamma_modulus_exponent: u32,
    /// `[K(f) : K(f p)]`, when the next level is small enough to enumerate.
    pub step_index: Option<u64>,
    /// `N(p)^{((n+1)n(n-1) + n(n-1)(n-2))/6}`, the step predicted by the formula.
    pub step_formula: u64,
}

impl IndexCounts {
    /// Both counts equal the closed formulas.
    pub fn matches(&self) -> bool {
        self.unipotent_index == self.unipotent_formula && self.gamma_index == self.gamma_formula
    }

    /// The level-raising step `[K(f) : K(f p)]` equals the formula's step (when computed).
    pub fn step_matches(&self) -> Option<bool> {
        self.step_index.map(|s| s == self.step_formula)
    }
}

const ENUMERATION_LIMIT: u128 = 600_000_000;

fn decode(mut idx: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % base);
        idx /= base;
    }
    out
}

fn h_f(n: usize, f: &Rat) -> RatMatrix {
    // t_(f)^{-1} h^(1) t_(f): entry (i, j) of h^(1) times f^{i-j}.
    RatMatrix::from_fn(n, n, |i, j| {
        let one = j == n - 1 || (i < n - 1 && i + j + 2 == n);
        if !one {
            return Rat::zero();
        }
        let e = i as i64 - j as i64;
        let fp = num_traits::pow(f.clone(), e.unsigned_abs() as usize);
        if e < 0 {
            fp.recip()
        } else {
            fp
        }
    })
}

/// Count both indices by enumeration for `f = p^nu`, level `m`.
pub fn count_indices(n: usize, p: u64, m: u32, nu: u32) -> Result<IndexCounts, HeckeError> {
    count_indices_with(n, p, m, nu, Strategy::default())
}

/// [`count_indices`] with an explicit execution strategy.
pub fn count_indices_with(n: usize, p: u64, m: u32, nu: u32, strategy: Strategy) -> Result<IndexCounts, HeckeError> {
    if n < 2 || !exact_arith::is_prime(p) || m == 0 || nu < m {
        return Err(HeckeError::InvalidParameters(format!("need n >= 2, p prime, 1 <= m <= nu (n={n}, p={p}, m={m}, nu={nu})")));
    }
    let nf = p.pow(nu);
    let unipotent_formula = nf.pow(((n + 1) * n * (n - 1) / 6) as u32);
    let gamma_formula = nf.pow((((n + 1) * n * (n - 1) + n * (n - 1) * (n - 2)) / 6) as u32);

    // Unipotent index: U_n(Z/p^M) with M = nu (n-1) contains the image of the
    // conjugated subgroup {u : u_ij in f^{j-i}}.
    let big_m = nu * (n as u32 - 1);
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let modulus = p.pow(big_m);
    let total_u = (modulus as u128).pow(slots.len() as u32);
    if total_u > ENUMERATION_LIMIT / 100 {
        return Err(HeckeError::InvalidParameters(format!("unipotent enumeration of {total_u} elements is too large")));
    }
    let sub = par::sum_range(strategy, 0..total_u as u64, |idx| {
        let digits = decode(idx, modulus, slots.len());
        let inside = slots.iter().zip(&digits).all(|(&(i, j), &x)| x % nf.pow((j - i) as u32) == 0);
        u64::from(inside)
    });
    let unipotent_index = total_u as u64 / sub;

    let (gamma, gamma_modulus_exponent) = gamma_index(n, p, m, nu, strategy)?;
    let next = gamma_index(n, p, m, nu + 1, strategy).ok().map(|(x, _)| x);
    Ok(IndexCounts {
        n,
        p,
        m,
        nu,
        unipotent_index,
        unipotent_formula,
        gamma_index: gamma,
        gamma_formula,
        gamma_modulus_exponent,
        step_index: next.map(|x| x / gamma),
        step_formula: p.pow((((n + 1) * n * (n - 1) + n * (n - 1) * (n - 2)) / 6) as u32),
    })
}

/// An integral affine form in the entries of `g`, scaled by `p^shift`; the condition is
/// `value = 0 mod p^{shift + need}`.
struct Form {
    coeffs: Vec<i128>,
    constant: i128,
    modulus: i128,
}

/// `(I_{n-1}^(m) : K(f))` for `f = p^nu`, by enumeration of `I_{n-1}^(m)` modulo `p^M`.
///
/// Membership of `h^{-1} j(g) h` in `I_n^(m)` is a system of affine congruences on the
/// entries of `g`; `M` is chosen so that every congruence only depends on `g mod p^M`.
pub fn gamma_index(n: usize, p: u64, m: u32, nu: u32, strategy: Strategy) -> Result<(u64, u32), HeckeError> {
    let f = num_traits::pow(int(p as i64), nu as usize);
    let h = h_f(n, &f);
    let hinv = h.inverse()?;
    let k = n - 1;
    if k * k > 16 {
        return Err(HeckeError::InvalidParameters(format!("n = {n} is too large for enumeration")));
    }
    let val = |x: &Rat| valuation_unchecked(x, p).finite();
    // Smallest valuation of any coefficient, to scale everything to integers.
    let mut low = 0i64;
    let coeff = |a: usize, b: usize, r: usize, c: usize| &hinv[(a, r)] * &h[(c, b)];
    for a in 0..n {
        for b in 0..n {
            for r in 0..n {
                for c in 0..n {
                    if let Some(v) = val(&coeff(a, b, r, c)) {
                        low = low.min(v);
                    }
                }
            }
        }
    }
    let shift = (-low) as u32;
    let mut gm = m as i64;
    let mut forms = Vec::new();
    let scale = num_traits::pow(int(p as i64), shift as usize);
    let to_int = |x: Rat| -> Result<i128, HeckeError> {
        let y = x * &scale;
        if !y.is_integer() {
            return Err(HeckeError::InvalidParameters("non p-power coefficient in h^(f)".into()));
        }
        y.to_integer().try_into().map_err(|_| HeckeError::InvalidParameters("coefficient overflow".into()))
    };
    for a in 0..n {
        for b in 0..n {
            let need = if a > b { m as i64 } else { 0 };
            let mut coeffs = vec![0i128; k * k];
            for r in 0..k {
                for c in 0..k {
                    let x = coeff(a, b, r, c);
                    if let Some(v) = val(&x) {
                        gm = gm.max(need - v);
                    }
                    coeffs[r * k + c] = to_int(x)?;
                }
            }
            let constant = to_int(coeff(a, b, k, k))?;
            let modulus = (p as i128).pow(shift + need as u32);
            forms.push(Form { coeffs, constant, modulus });
        }
    }
    let gm = gm.max(1) as u32;
    let gmod = p.pow(gm);
    // Structured enumeration of I_{n-1}^(m) mod p^M: diagonal units, entries below the
    // diagonal in p^m Z, entries above arbitrary.
    let pm = p.pow(m);
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let ranges: Vec<Vec<u64>> = slots
        .iter()
        .map(|&(a, b)| {
            if a == b {
                (0..gmod).filter(|x| x % p != 0).collect()
            } else if a > b {
                (0..gmod).step_by(pm as usize).collect()
            } else {
                (0..gmod).collect()
            }
        })
        .collect();
    let total: u128 = ranges.iter().map(|r| r.len() as u128).product();
    if total > ENUMERATION_LIMIT {
        return Err(HeckeError::InvalidParameters(format!(
            "I_{k}^({m}) mod {p}^{gm} has {total} elements, beyond the enumeration limit"
        )));
    }
    let inside = par::sum_range(strategy, 0..total as u64, |mut idx| {
        let mut g = [0i128; 16];
        for (s, r) in ranges.iter().enumerate() {
            let len = r.len() as u64;
            g[s] = r[(idx % len) as usize] as i128;
            idx /= len;
        }
        let ok = forms.iter().all(|fm| {
            let v: i128 = fm.coeffs.iter().zip(&g).map(|(c, x)| c * x).sum::<i128>() + fm.constant;
            v.rem_euclid(fm.modulus) == 0
        });
        u64::from(ok)
    });
    if inside == 0 {
        return Err(HeckeError::InvalidParameters("empty congruence subgroup image".into()));
    }
    Ok(((total / inside as u128) as u64, gm))
}
