//! Single-shot computations behind the `hecke-forge` subcommands.
//!
//! Each function returns the JSON object printed by the corresponding subcommand.

use std::path::Path;

use distributions::{build_mu, integrate_at, integrate_character, kappa_hat, Distribution, EigenSymbol, InterpolationInput, RayTower};
use exact_arith::{parse_rat, Cyclo};
use gauss_sums::{all_characters, check_gauss, classical_gauss_sum, gauss_sum, MultChar};
use iwahori_hecke::operators::{expand_checked, expected_count};
use iwahori_hecke::{satake, HeckeOperatorTag, Level};
use serde_json::{json, Value};
use weights_criticality::{branch, branch_count, critical_data, critical_table, emb_set, Weight};

use crate::fixtures::case_rng;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// How a character of `(Z/p^l)^×` is chosen on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharSelector {
    /// Position in the lexicographic enumeration of all characters.
    Index(usize),
    /// The first primitive character of this exact order.
    Order(u64),
    /// The first primitive character.
    FirstPrimitive,
}

pub fn select_character(p: u64, level: u32, sel: CharSelector) -> Result<MultChar, String> {
    let all = all_characters(p, level).map_err(err)?;
    let found = match sel {
        CharSelector::Index(i) => all.get(i).cloned(),
        CharSelector::Order(d) => all.into_iter().find(|c| c.is_primitive() && c.order() == d),
        CharSelector::FirstPrimitive => all.into_iter().find(|c| c.is_primitive()),
    };
    found.ok_or_else(|| format!("no character mod {p}^{level} matches {sel:?}"))
}

pub fn gauss_sum_json(p: u64, level: u32, sel: CharSelector) -> Result<Value, String> {
    let chi = select_character(p, level, sel)?;
    let g = gauss_sum(&chi).map_err(err)?;
    let classical = classical_gauss_sum(&chi).map_err(err)?;
    let check = check_gauss(&chi).map_err(err)?;
    Ok(json!({
        "character": chi,
        "gauss_sum": g,
        "classical": classical,
        "square": (&g * &g).minimize_conductor(),
        "checks": check,
        "ok": check.ok(),
    }))
}

pub fn hecke_expand_json(n: usize, p: u64, r: u32, op: &str, samples: usize, seed: u64) -> Result<Value, String> {
    let tag: HeckeOperatorTag = op.parse().map_err(err)?;
    let level = Level::new(n, p, r).map_err(err)?;
    let (sum, coverage) = expand_checked(tag, &level, samples, seed).map_err(err)?;
    let expected = expected_count(tag, n, p);
    Ok(json!({
        "operator": tag.to_string(),
        "level": level,
        "count": sum.len(),
        "expected": expected,
        "ok": expected.map_or(true, |e| e == sum.len() as u64) && coverage.disjoint,
        "coverage": coverage,
        "cosets": sum,
    }))
}

pub fn satake_json(n: usize, nu: usize) -> Result<Value, String> {
    let s = satake(nu, n).map_err(err)?;
    Ok(json!({"n": n, "nu": nu, "symmetric": s.is_symmetric(), "satake": s}))
}

pub fn branch_json(mu: &str) -> Result<Value, String> {
    let mu: Weight = mu.parse().map_err(err)?;
    let all = branch(&mu);
    Ok(json!({"mu": mu, "count": all.len(), "expected_count": branch_count(&mu), "weights": all}))
}

pub fn critical_json(mu: &str, nu: &str) -> Result<Value, String> {
    let mu: Weight = mu.parse().map_err(err)?;
    let nu: Weight = nu.parse().map_err(err)?;
    let data = critical_data(&mu, &nu).map_err(err)?;
    let emb = emb_set(&nu, &mu).map_err(err)?;
    // a window of three twists on either side of Emb (or of the centre when Emb is empty)
    let centre = (data.w + data.v).div_euclid(2);
    let (lo, hi) = emb.bounds.unwrap_or((centre, centre));
    let table = critical_table(&mu, &nu, lo - 3, hi + 3).map_err(err)?;
    Ok(json!({"mu": mu, "nu": nu, "emb": emb.to_vec(), "table": table, "data": data}))
}

pub struct KappaHatArgs {
    pub n: usize,
    pub p: u64,
    pub level: u32,
    pub character: CharSelector,
    pub nu: i64,
    pub nu_min: i64,
    pub kappa: String,
}

pub fn kappa_hat_json(a: &KappaHatArgs) -> Result<Value, String> {
    let chi = select_character(a.p, a.level, a.character)?;
    let kappa = Cyclo::from_rat(parse_rat(&a.kappa).map_err(err)?);
    let input = InterpolationInput::new(chi, a.nu, a.nu_min, kappa);
    let k = kappa_hat(&input, a.n).map_err(err)?;
    Ok(json!({"input": input, "kappa_hat": k, "ok": k.audit_ok()}))
}

/// Source of the distribution for `integrate`.
pub enum DistSource<'a> {
    File(&'a Path),
    Random { p: u64, depth: u32, kappa: &'a str, seed: u64 },
}

pub fn load_distribution(src: &DistSource<'_>) -> Result<Distribution, String> {
    match *src {
        DistSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
        DistSource::Random { p, depth, kappa, seed } => {
            let kappa = Cyclo::from_rat(parse_rat(kappa).map_err(err)?);
            let tower = RayTower::rational(p).map_err(err)?;
            let sym = EigenSymbol::random(tower, kappa, depth, vec![0], 9, &mut case_rng(seed, "integrate")).map_err(err)?;
            build_mu(&sym, 1).map_err(err)
        }
    }
}

pub fn integrate_json(src: &DistSource<'_>, level: u32, sel: CharSelector, at: Option<u32>) -> Result<Value, String> {
    let mu = load_distribution(src)?;
    let chi = select_character(mu.p(), level, sel)?;
    let tc = chi.clone().into();
    let integral = match at {
        Some(m) => integrate_at(&mu, &tc, m),
        None => integrate_character(&mu, &tc),
    }
    .map_err(err)?;
    Ok(json!({"p": mu.p(), "character": chi, "integral": integral}))
}
