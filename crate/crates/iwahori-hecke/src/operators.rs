//! Coset decompositions of the Hecke operators.

use std::fmt;

use exact_arith::{int, Rat, RatMatrix};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::monoid::{elementary_divisors, in_monoid, random_in_level};
use crate::{CosetSum, HeckeError, Level};

/// The operators of the spherical and Iwahori Hecke algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HeckeOperatorTag {
    /// `T_nu = K diag(1_{n-nu}, varpi 1_nu) K`, restricted to `K_I` cosets.
    T(usize),
    /// `U_i = K_I pi_i K_I` with `pi_i = diag(1, .., varpi, .., 1)` (`varpi` in slot `i`).
    U(usize),
    /// `V_{p,nu} = K_I diag(varpi 1_nu, 1_{n-nu}) K_I`.
    V(usize),
    /// `V_p = K_I t_(varpi) K_I`.
    VP,
    /// `V_p' = K_I varpi t_(varpi) K_I`.
    VPPrime,
}

impl fmt::Display for HeckeOperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeOperatorTag::T(nu) => write!(f, "T_{nu}"),
            HeckeOperatorTag::U(i) => write!(f, "U_{i}"),
            HeckeOperatorTag::V(nu) => write!(f, "V_p,{nu}"),
            HeckeOperatorTag::VP => write!(f, "V_p"),
            HeckeOperatorTag::VPPrime => write!(f, "V_p'"),
        }
    }
}

impl std::str::FromStr for HeckeOperatorTag {
    type Err = HeckeError;

    /// Parses `T1`, `U2`, `V1`, `Vp`, `Vp'` (also with an underscore: `T_1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.replace('_', "");
        let bad = || HeckeError::InvalidParameters(format!("unknown operator {s:?}"));
        match t.as_str() {
            "Vp" | "VP" => return Ok(HeckeOperatorTag::VP),
            "Vp'" | "VP'" | "Vpprime" => return Ok(HeckeOperatorTag::VPPrime),
            _ => {}
        }
        let (head, idx) = t.split_at(1.min(t.len()));
        let k: usize = idx.parse().map_err(|_| bad())?;
        match head {
            "T" => Ok(HeckeOperatorTag::T(k)),
            "U" => Ok(HeckeOperatorTag::U(k)),
            "V" => Ok(HeckeOperatorTag::V(k)),
            _ => Err(bad()),
        }
    }
}

fn varpi_diag(exps: &[u32], p: u64) -> RatMatrix {
    let d: Vec<Rat> = exps.iter().map(|&e| num_traits::pow(int(p as i64), e as usize)).collect();
    RatMatrix::diag(&d)
}

fn t_varpi_exps(n: usize) -> Vec<u32> {
    (0..n).map(|i| (n - 1 - i) as u32).collect()
}

fn check_tag(tag: HeckeOperatorTag, n: usize) -> Result<(), HeckeError> {
    let ok = match tag {
        HeckeOperatorTag::T(nu) | HeckeOperatorTag::V(nu) => nu <= n,
        HeckeOperatorTag::U(i) => (1..=n).contains(&i),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(HeckeError::InvalidTag { tag: tag.to_string(), n })
    }
}

/// The double coset generator of an operator.
pub fn generator(tag: HeckeOperatorTag, n: usize, p: u64) -> Result<RatMatrix, HeckeError> {
    check_tag(tag, n)?;
    let exps: Vec<u32> = match tag {
        HeckeOperatorTag::T(nu) => (0..n).map(|i| u32::from(i >= n - nu)).collect(),
        HeckeOperatorTag::U(i) => (0..n).map(|k| u32::from(k + 1 == i)).collect(),
        HeckeOperatorTag::V(nu) => (0..n).map(|i| u32::from(i < nu)).collect(),
        HeckeOperatorTag::VP => t_varpi_exps(n),
        HeckeOperatorTag::VPPrime => t_varpi_exps(n).into_iter().map(|e| e + 1).collect(),
    };
    Ok(varpi_diag(&exps, p))
}

/// Mixed-radix enumeration of integer tuples with the given moduli.
fn for_each_tuple<F: FnMut(&[i64]) -> Result<(), HeckeError>>(moduli: &[i64], mut f: F) -> Result<(), HeckeError> {
    let mut digits = vec![0i64; moduli.len()];
    loop {
        f(&digits)?;
        let mut k = 0;
        loop {
            if k == moduli.len() {
                return Ok(());
            }
            digits[k] += 1;
            if digits[k] < moduli[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Upper unipotent matrix whose `(i, j)` entry (`i < j`, row-major order) runs over
/// `0 .. modulus(i, j)`; calls `f` for every such matrix.
fn for_each_unipotent<M, F>(n: usize, modulus: M, mut f: F) -> Result<(), HeckeError>
where
    M: Fn(usize, usize) -> i64,
    F: FnMut(RatMatrix) -> Result<(), HeckeError>,
{
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let moduli: Vec<i64> = slots.iter().map(|&(i, j)| modulus(i, j)).collect();
    for_each_tuple(&moduli, |digits| {
        let mut u = RatMatrix::identity(n);
        for (&(i, j), &x) in slots.iter().zip(digits) {
            u[(i, j)] = int(x);
        }
        f(u)
    })
}

const BRUTE_FORCE_LIMIT: u128 = 200_000;

/// Decompose an operator into right cosets at the given level.
///
/// `V_{p,nu}`, `V_p`, `V_p'` use the explicit representative systems (`A` mod `p`,
/// `u` mod `t_(varpi) U_n t_(varpi)^{-1}`); `U_i` is found by brute force over `u pi_i`
/// with `u` upper unipotent mod `p^2`; `T_nu` is the restriction of its Iwasawa
/// decomposition.
pub fn expand_operator(tag: HeckeOperatorTag, level: &Level) -> Result<CosetSum, HeckeError> {
    let (n, p) = (level.n, level.p);
    let g = generator(tag, n, p)?;
    let pi = p as i64;
    let mut sum = CosetSum::zero(*level);
    match tag {
        HeckeOperatorTag::T(nu) => {
            let lambda: Vec<u32> = (0..n).map(|i| u32::from(i < nu)).collect();
            let sph = spherical_double_coset(&lambda, &level.spherical())?;
            return restrict_spherical(&sph, level.r);
        }
        HeckeOperatorTag::V(nu) => {
            for_each_unipotent(n, |i, j| if i < nu && j >= nu { pi } else { 1 }, |u| {
                let mut a = u;
                for i in 0..nu {
                    a[(i, i)] = int(pi);
                }
                sum.add_term(a, Rat::one())
            })?;
        }
        HeckeOperatorTag::VP | HeckeOperatorTag::VPPrime => {
            for_each_unipotent(n, |i, j| pi.pow((j - i) as u32), |u| sum.add_term(u.mul(&g), Rat::one()))?;
        }
        HeckeOperatorTag::U(_) => {
            let m = (p as u128 * p as u128).pow((n * (n - 1) / 2) as u32);
            if m > BRUTE_FORCE_LIMIT {
                return Err(HeckeError::InvalidParameters(format!(
                    "brute-force U_i decomposition needs {m} candidates (limit {BRUTE_FORCE_LIMIT})"
                )));
            }
            for_each_unipotent(n, |_, _| pi * pi, |u| sum.insert_distinct(u.mul(&g)).map(|_| ()))?;
        }
    }
    Ok(sum)
}

/// Iwasawa representatives of the spherical double coset `K varpi^lambda K`: upper
/// triangular `g` with diagonal `varpi^{a_i}` and `(i, j)` entries reduced modulo
/// `varpi^{a_i}`, filtered by elementary divisors.
pub fn spherical_double_coset(lambda: &[u32], level: &Level) -> Result<CosetSum, HeckeError> {
    let n = level.n;
    if lambda.len() != n {
        return Err(HeckeError::InvalidParameters(format!("lambda has {} entries, expected {n}", lambda.len())));
    }
    let spherical = level.spherical();
    let mut target: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    target.sort_unstable_by(|a, b| b.cmp(a));
    let total: u32 = lambda.iter().sum();
    let top = *lambda.iter().max().unwrap_or(&0);
    let pi = level.p as i64;
    let mut sum = CosetSum::zero(spherical);
    let diag_choices: Vec<i64> = vec![top as i64 + 1; n];
    for_each_tuple(&diag_choices, |a| {
        if a.iter().sum::<i64>() != total as i64 {
            return Ok(());
        }
        let exps: Vec<u32> = a.iter().map(|&x| x as u32).collect();
        let d = varpi_diag(&exps, level.p);
        for_each_unipotent(n, |i, _| pi.pow(exps[i]), |u| {
            let mut g = u;
            for i in 0..n {
                g[(i, i)] = d[(i, i)].clone();
            }
            if elementary_divisors(&g, level.p).as_deref() == Some(&target[..]) {
                sum.add_term(g, Rat::one())?;
            }
            Ok(())
        })
    })?;
    Ok(sum)
}

/// Reinterpret a sum of `GL_n(Z_p)` cosets with upper triangular representatives as a
/// sum of `K_I` cosets of level `r` (the embedding of the spherical algebra).
pub fn restrict_spherical(sum: &CosetSum, r: u32) -> Result<CosetSum, HeckeError> {
    if sum.level().r != 0 {
        return Err(HeckeError::InvalidParameters("restriction expects a spherical coset sum".into()));
    }
    if let Some((c, _)) = sum.terms().find(|(c, _)| !c.rep().is_upper_triangular()) {
        return Err(HeckeError::NotTriangular(c.rep().to_strings()));
    }
    sum.relevel(Level { r, ..sum.level() })
}

/// Outcome of the disjointness and coverage invariants of an expansion.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub operator: String,
    pub cosets: usize,
    pub disjoint: bool,
    pub samples_checked: usize,
    pub samples_rejected: usize,
}

/// Check that the representatives of `sum` are pairwise inequivalent and that for
/// `samples` random `k in K` with `k g` in the monoid, `k g` lies in exactly one listed
/// coset (`g` the double coset generator).
pub fn check_coverage(
    operator: &str,
    sum: &CosetSum,
    g: &RatMatrix,
    samples: usize,
    seed: u64,
) -> Result<CoverageReport, HeckeError> {
    let level = sum.level();
    let pairs = sum.to_pairs();
    let mut disjoint = pairs.iter().all(|(_, c)| c.is_one());
    'outer: for (a, (ga, _)) in pairs.iter().enumerate() {
        let inv = ga.inverse()?;
        for (gb, _) in &pairs[a + 1..] {
            if level.contains(&inv.mul(gb)) {
                disjoint = false;
                break 'outer;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut rejected) = (0, 0);
    let max_attempts = samples * 200 + 1000;
    while checked < samples {
        if checked + rejected >= max_attempts {
            return Err(HeckeError::Coverage {
                operator: operator.into(),
                reason: format!("only {checked} of {samples} samples landed in the monoid"),
                sample: vec![],
            });
        }
        let k = random_in_level(&level, &mut rng);
        let x = k.mul(g);
        if !in_monoid(&x, &level) {
            rejected += 1;
            continue;
        }
        let hits = pairs
            .iter()
            .filter(|(gi, _)| gi.inverse().map(|inv| level.contains(&inv.mul(&x))).unwrap_or(false))
            .count();
        if hits != 1 {
            return Err(HeckeError::Coverage {
                operator: operator.into(),
                reason: format!("sample lies in {hits} listed cosets"),
                sample: x.to_strings(),
            });
        }
        checked += 1;
    }
    Ok(CoverageReport { operator: operator.into(), cosets: sum.len(), disjoint, samples_checked: checked, samples_rejected: rejected })
}

/// Expand an operator and run [`check_coverage`] on it (spherical decomposition for `T_nu`).
pub fn expand_checked(
    tag: HeckeOperatorTag,
    level: &Level,
    samples: usize,
    seed: u64,
) -> Result<(CosetSum, CoverageReport), HeckeError> {
    let g = generator(tag, level.n, level.p)?;
    let sum = expand_operator(tag, level)?;
    let report = match tag {
        HeckeOperatorTag::T(_) => check_coverage(&tag.to_string(), &sum.relevel(level.spherical())?, &g, samples, seed)?,
        _ => check_coverage(&tag.to_string(), &sum, &g, samples, seed)?,
    };
    if !report.disjoint {
        return Err(HeckeError::Coverage {
            operator: tag.to_string(),
            reason: "representatives are not pairwise disjoint".into(),
            sample: vec![],
        });
    }
    Ok((sum, report))
}

/// `p^{nu (n - nu)}`, `p^{(n+1) n (n-1)/6}` and `p^{n-i}`: the expected number of cosets.
pub fn expected_count(tag: HeckeOperatorTag, n: usize, p: u64) -> Option<u64> {
    let e = match tag {
        HeckeOperatorTag::V(nu) => nu * (n - nu),
        HeckeOperatorTag::VP | HeckeOperatorTag::VPPrime => (n + 1) * n * (n.saturating_sub(1)) / 6,
        HeckeOperatorTag::U(i) => n - i,
        HeckeOperatorTag::T(_) => return None,
    };
    Some(p.pow(e as u32))
}
