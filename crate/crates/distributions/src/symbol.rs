//! Eigen-symbols: base data at a deep level pushed down by the `U_p`-eigen rule.

use std::collections::BTreeMap;

use exact_arith::{Cyclo, Rat};
use rand::Rng;
use serde::Serialize;

use crate::distribution::sum_vectors;
use crate::{Class, DistError, Distribution, RayTower};

/// Base values `B(x, p^M)` together with the eigenvalue `κ`; shallower levels follow
/// `B(x, p^m) = κ^{−1}·Σ_{a mod p} B(x + a·p^m, p^{m+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSymbol {
    pub tower: RayTower,
    pub kappa: Cyclo,
    pub base_level: u32,
    pub coords: Vec<i64>,
    pub base: BTreeMap<Class, Vec<Cyclo>>,
}

impl EigenSymbol {
    pub fn new(
        tower: RayTower,
        kappa: Cyclo,
        base_level: u32,
        coords: Vec<i64>,
        base: BTreeMap<Class, Vec<Cyclo>>,
    ) -> Result<EigenSymbol, DistError> {
        if base_level == 0 {
            return Err(DistError::InvalidParameters("the base level must be at least 1".into()));
        }
        if base.len() as u64 != tower.size(base_level) {
            return Err(DistError::InvalidParameters(format!(
                "base data covers {} of {} classes",
                base.len(),
                tower.size(base_level)
            )));
        }
        for (c, v) in &base {
            if !tower.is_class(*c, base_level) {
                return Err(DistError::NotAClass { class: *c, level: base_level });
            }
            if v.len() != coords.len() {
                return Err(DistError::DimensionMismatch { expected: coords.len(), got: v.len() });
            }
        }
        Ok(EigenSymbol { tower, kappa, base_level, coords, base })
    }

    /// Base data with every value equal to `value`.
    pub fn constant(tower: RayTower, kappa: Cyclo, base_level: u32, coords: Vec<i64>, value: Vec<Cyclo>) -> Result<EigenSymbol, DistError> {
        let base = tower.classes(base_level).into_iter().map(|c| (c, value.clone())).collect();
        EigenSymbol::new(tower, kappa, base_level, coords, base)
    }

    /// Random rational base data with numerators in `[−bound, bound]` and denominators in `[1, bound]`.
    pub fn random<R: Rng + ?Sized>(
        tower: RayTower,
        kappa: Cyclo,
        base_level: u32,
        coords: Vec<i64>,
        bound: i64,
        rng: &mut R,
    ) -> Result<EigenSymbol, DistError> {
        let bound = bound.max(1);
        let base = tower
            .classes(base_level)
            .into_iter()
            .map(|c| {
                let v = coords
                    .iter()
                    .map(|_| Cyclo::from_rat(Rat::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into())))
                    .collect();
                (c, v)
            })
            .collect();
        EigenSymbol::new(tower, kappa, base_level, coords, base)
    }

    /// `B(·, p^m)` for `1 ≤ m ≤ M` via the push-down rule.
    pub fn level_values(&self, m: u32) -> Result<BTreeMap<Class, Vec<Cyclo>>, DistError> {
        if m == 0 || m > self.base_level {
            return Err(DistError::MissingLevel { level: m, min: 1, max: self.base_level });
        }
        let kinv = self.kappa.inv().map_err(|_| DistError::NotFiniteSlope)?;
        let mut current = self.base.clone();
        for k in (m..self.base_level).rev() {
            current = self
                .tower
                .classes(k)
                .into_iter()
                .map(|c| {
                    let s = sum_vectors(self.coords.len(), self.tower.lifts(c, k).map(|l| &current[&l]));
                    (c, s.iter().map(|x| x * &kinv).collect())
                })
                .collect();
        }
        Ok(current)
    }
}

/// `μ(x + p^m) = κ^{−m}·B(x, p^m)` for `m_0 ≤ m ≤ M`.
pub fn build_mu(sym: &EigenSymbol, m0: u32) -> Result<Distribution, DistError> {
    if sym.kappa.is_zero() {
        return Err(DistError::NotFiniteSlope);
    }
    if m0 == 0 || m0 > sym.base_level {
        return Err(DistError::InvalidParameters(format!("need 1 ≤ m_0 ≤ {}", sym.base_level)));
    }
    let mut levels = BTreeMap::new();
    let mut current = sym.base.clone();
    let kinv = sym.kappa.inv().map_err(|_| DistError::NotFiniteSlope)?;
    for m in (m0..=sym.base_level).rev() {
        if m < sym.base_level {
            current = sym
                .tower
                .classes(m)
                .into_iter()
                .map(|c| {
                    let s = sum_vectors(sym.coords.len(), sym.tower.lifts(c, m).map(|l| &current[&l]));
                    (c, s.iter().map(|x| x * &kinv).collect())
                })
                .collect();
        }
        let scale = kinv.pow(m as i64).expect("non-zero");
        let table = current.iter().map(|(c, v)| (*c, v.iter().map(|x| x * &scale).collect())).collect();
        levels.insert(m, table);
    }
    Ok(Distribution::from_levels(sym.tower, sym.coords.clone(), levels)?.with_kappa(sym.kappa.clone()))
}
