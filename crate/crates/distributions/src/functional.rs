//! The involution `x ↦ x^∨` on the tower, its action on distributions, and the functional equation.

use std::collections::BTreeMap;

use exact_arith::par::{self, Strategy};
use exact_arith::{Cyclo, Rat};
use hecke_modules::{kappa, HeckeRoots};
use serde::Serialize;

use crate::distribution::CosetWitness;
use crate::{Class, DistError, Distribution, EigenSymbol};

/// Coordinate reindexing `ν ↦ −ν` on `E^d` (labels stay ascending, so values are reversed).
pub fn value_vee(coords: &[i64], value: &[Cyclo]) -> (Vec<i64>, Vec<Cyclo>) {
    (coords.iter().rev().map(|c| -c).collect(), value.iter().rev().cloned().collect())
}

/// `(μ^∨)(x) := (μ(x^∨))^∨` on every stored level.
pub fn involution_vee(mu: &Distribution, n: usize) -> Result<Distribution, DistError> {
    let tower = *mu.tower();
    let coords = value_vee(mu.coords(), &[]).0;
    let mut levels = BTreeMap::new();
    for m in mu.levels() {
        let table = mu
            .level(m)?
            .keys()
            .map(|&c| {
                let v = mu.value(m, tower.vee(c, m, n)).expect("vee permutes classes");
                (c, value_vee(mu.coords(), v).1)
            })
            .collect();
        levels.insert(m, table);
    }
    Distribution::from_levels(tower, coords, levels)
}

/// Eigenvalue data for a pair `(λ, λ′)` of `GL_n × GL_{n−1}` Hecke roots and its contragredient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEigenData {
    pub n: usize,
    #[serde(with = "exact_arith::rat_serde")]
    pub q: Rat,
    /// `T_n`-eigenvalue `η_n = q^{−n(n−1)/2}∏λ_i` on the `GL_n` factor.
    pub zeta: Cyclo,
    /// `T_{n−1}`-eigenvalue `η′_{n−1} = q^{−(n−1)(n−2)/2}∏λ′_i` on the `GL_{n−1}` factor.
    pub zeta_prime: Cyclo,
    /// `κ_λ·κ_λ′`.
    pub kappa: Cyclo,
    /// `κ_{λ^∨}·κ_{λ′^∨}`.
    pub kappa_dual: Cyclo,
}

impl DualEigenData {
    /// From all `n` roots `λ` and all `n − 1` roots `λ′`.
    pub fn from_roots(lambda: &[Cyclo], lambda_prime: &[Cyclo], q: &Rat) -> Result<DualEigenData, DistError> {
        let n = lambda.len();
        if n < 2 || lambda_prime.len() != n - 1 {
            return Err(DistError::InvalidParameters(format!("expected n ≥ 2 roots and n − 1 primed roots, got {} and {}", n, lambda_prime.len())));
        }
        if lambda.iter().chain(lambda_prime).any(Cyclo::is_zero) {
            return Err(DistError::NotFiniteSlope);
        }
        let qc = Cyclo::from_rat(q.clone());
        let q_pow = |e: i64| qc.pow(e).expect("q ≠ 0");
        let ni = n as i64;
        let zeta = &lambda.iter().cloned().product::<Cyclo>() * &q_pow(-ni * (ni - 1) / 2);
        let zeta_prime = &lambda_prime.iter().cloned().product::<Cyclo>() * &q_pow(-(ni - 1) * (ni - 2) / 2);
        let lambda_dual: Vec<Cyclo> = (2..=n).rev().map(|i| HeckeRoots::dual_root(&lambda[i - 1], n, q)).collect();
        let lambda_prime_dual: Vec<Cyclo> = (1..n).rev().map(|i| HeckeRoots::dual_root(&lambda_prime[i - 1], n - 1, q)).collect();
        let k = &kappa(&lambda[..n - 1], n, q) * &kappa(lambda_prime, n, q);
        let kd = &kappa(&lambda_dual, n, q) * &kappa(&lambda_prime_dual, n, q);
        Ok(DualEigenData { n, q: q.clone(), zeta, zeta_prime, kappa: k, kappa_dual: kd })
    }

    /// `ζ_λ^{1−n}·ζ_λ′^{−n}` at level `p^m`, where `ζ` are the `T^m`-eigenvalues.
    pub fn zeta_factor(&self, m: u32) -> Cyclo {
        let ni = self.n as i64;
        let mi = m as i64;
        &self.zeta.pow((1 - ni) * mi).expect("non-zero") * &self.zeta_prime.pow(-ni * mi).expect("non-zero")
    }

    /// `κ_λ(p^m) = ζ_λ^{1−n}ζ_λ′^{−n}·κ_{λ^∨}(p^m)` with `κ(p^m) = κ^{−m}`.
    pub fn relation_holds(&self, m: u32) -> bool {
        let mi = m as i64;
        let lhs = self.kappa.pow(-mi).expect("non-zero");
        let rhs = &self.zeta_factor(m) * &self.kappa_dual.pow(-mi).expect("non-zero");
        lhs == rhs
    }
}

/// The symbol attached to the contragredient: eigenvalue `κ_dual` and base data
/// `B^∨(x) = ζ_λ^{1−n}ζ_λ′^{−n}·(B(x^∨))^∨` with the `ζ`-factor taken at the base level.
pub fn dual_symbol(sym: &EigenSymbol, n: usize, eigen: &DualEigenData) -> Result<EigenSymbol, DistError> {
    if eigen.n != n {
        return Err(DistError::InvalidParameters("eigen data is for a different n".into()));
    }
    let factor = eigen.zeta_factor(sym.base_level);
    let tower = sym.tower;
    let coords = value_vee(&sym.coords, &[]).0;
    let base = sym
        .base
        .keys()
        .map(|&c| {
            let v = &sym.base[&tower.vee(c, sym.base_level, n)];
            (c, value_vee(&sym.coords, v).1.iter().map(|x| x * &factor).collect())
        })
        .collect();
    EigenSymbol::new(tower, eigen.kappa_dual.clone(), sym.base_level, coords, base)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalReport {
    /// `(μ(x))^∨ = μ^∨(x^∨)` at every stored coset.
    pub values_ok: bool,
    pub checked: usize,
    pub witness: Option<CosetWitness>,
    /// Component form: `τ_ν(μ(x)) = τ_{−ν}(μ^∨(x^∨))` for every label `ν`.
    pub components_ok: bool,
    /// The eigenvalue relation at every stored level, when eigen data was supplied.
    pub eigen_relation_ok: Option<bool>,
    /// Stored `κ` of each distribution agrees with the supplied eigen data.
    pub kappa_consistent: Option<bool>,
}

impl FunctionalReport {
    pub fn ok(&self) -> bool {
        self.values_ok && self.components_ok && self.eigen_relation_ok != Some(false) && self.kappa_consistent != Some(false)
    }
}

pub fn check_functional_equation(
    mu: &Distribution,
    mu_dual: &Distribution,
    n: usize,
    eigen: Option<&DualEigenData>,
    strategy: Strategy,
) -> Result<FunctionalReport, DistError> {
    if mu.tower() != mu_dual.tower() || mu.min_level() != mu_dual.min_level() || mu.depth() != mu_dual.depth() {
        return Err(DistError::Incompatible);
    }
    let expected_coords = value_vee(mu.coords(), &[]).0;
    if expected_coords != mu_dual.coords() {
        return Err(DistError::Incompatible);
    }
    let tower = *mu.tower();
    let jobs: Vec<(u32, Class)> = mu.levels().flat_map(|m| tower.classes(m).into_iter().map(move |c| (m, c))).collect();
    let results = par::map(strategy, &jobs, |&(m, c)| {
        let lhs = value_vee(mu.coords(), mu.value(m, c).expect("stored")).1;
        let rhs = mu_dual.value(m, tower.vee(c, m, n)).expect("stored");
        let components = mu.coords().iter().enumerate().all(|(i, nu)| {
            let j = mu_dual.coords().iter().position(|x| *x == -nu).expect("labels match");
            mu.value(m, c).expect("stored")[i] == rhs[j]
        });
        let w = (lhs != *rhs).then(|| CosetWitness { m, class: c, expected: lhs, got: rhs.clone() });
        (w, components)
    });
    let components_ok = results.iter().all(|r| r.1);
    let witness = results.into_iter().find_map(|r| r.0);
    let (eigen_relation_ok, kappa_consistent) = match eigen {
        Some(e) => (
            Some(mu.levels().all(|m| e.relation_holds(m))),
            Some(mu.kappa().map_or(true, |k| *k == e.kappa) && mu_dual.kappa().map_or(true, |k| *k == e.kappa_dual)),
        ),
        None => (None, None),
    };
    Ok(FunctionalReport {
        values_ok: witness.is_none(),
        checked: jobs.len(),
        witness,
        components_ok,
        eigen_relation_ok,
        kappa_consistent,
    })
}
