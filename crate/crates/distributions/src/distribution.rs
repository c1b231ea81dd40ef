//! Finitely additive `E^d`-valued distributions on a ray class tower and their checks.

use std::collections::BTreeMap;

use exact_arith::par::{self, Strategy};
use exact_arith::{Cyclo, PadicVal};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Class, DistError, RayTower};

/// Values `μ(x + p^m) ∈ E^d` for every class at every stored level `m_0 ≤ m ≤ M`.
///
/// Coordinates are labelled by the integers `ν` in `coords` (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    tower: RayTower,
    coords: Vec<i64>,
    levels: BTreeMap<u32, BTreeMap<Class, Vec<Cyclo>>>,
    /// `U_p`-eigenvalue of the symbol the distribution was built from, if any.
    kappa: Option<Cyclo>,
}

impl Distribution {
    /// Build from explicit level tables; every class of every level must be present.
    pub fn from_levels(
        tower: RayTower,
        coords: Vec<i64>,
        levels: BTreeMap<u32, BTreeMap<Class, Vec<Cyclo>>>,
    ) -> Result<Distribution, DistError> {
        if levels.is_empty() || levels.keys().next() == Some(&0) {
            return Err(DistError::InvalidParameters("levels must be non-empty and start at m ≥ 1".into()));
        }
        let (lo, hi) = (*levels.keys().next().unwrap(), *levels.keys().last().unwrap());
        if levels.len() as u32 != hi - lo + 1 {
            return Err(DistError::InvalidParameters("stored levels must be consecutive".into()));
        }
        if coords.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DistError::InvalidParameters("coordinate labels must be strictly increasing".into()));
        }
        for (&m, table) in &levels {
            if table.len() as u64 != tower.size(m) {
                return Err(DistError::InvalidParameters(format!("level {m} has {} of {} classes", table.len(), tower.size(m))));
            }
            for (c, v) in table {
                if !tower.is_class(*c, m) {
                    return Err(DistError::NotAClass { class: *c, level: m });
                }
                if v.len() != coords.len() {
                    return Err(DistError::DimensionMismatch { expected: coords.len(), got: v.len() });
                }
            }
        }
        Ok(Distribution { tower, coords, levels, kappa: None })
    }

    /// The compatible family `μ(x + p^m) = [x ≡ x_0]·value`, for `x_0` of level `depth`.
    pub fn dirac(tower: RayTower, coords: Vec<i64>, min_level: u32, depth: u32, x0: Class, value: Vec<Cyclo>) -> Result<Distribution, DistError> {
        if min_level == 0 || min_level > depth || !tower.is_class(x0, depth) {
            return Err(DistError::InvalidParameters("need 1 ≤ m_0 ≤ M and a class x_0 of level M".into()));
        }
        let zero = vec![Cyclo::zero(); coords.len()];
        let levels = (min_level..=depth)
            .map(|m| {
                let at = tower.reduce(x0, m);
                let table = tower.classes(m).into_iter().map(|c| (c, if c == at { value.clone() } else { zero.clone() })).collect();
                (m, table)
            })
            .collect();
        Distribution::from_levels(tower, coords, levels)
    }

    pub(crate) fn with_kappa(mut self, kappa: Cyclo) -> Distribution {
        self.kappa = Some(kappa);
        self
    }

    pub fn tower(&self) -> &RayTower {
        &self.tower
    }

    pub fn p(&self) -> u64 {
        self.tower.p
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn kappa(&self) -> Option<&Cyclo> {
        self.kappa.as_ref()
    }

    pub fn min_level(&self) -> u32 {
        *self.levels.keys().next().expect("non-empty")
    }

    pub fn depth(&self) -> u32 {
        *self.levels.keys().last().expect("non-empty")
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.keys().copied()
    }

    pub fn level(&self, m: u32) -> Result<&BTreeMap<Class, Vec<Cyclo>>, DistError> {
        self.levels.get(&m).ok_or(DistError::MissingLevel { level: m, min: self.min_level(), max: self.depth() })
    }

    pub fn value(&self, m: u32, c: Class) -> Result<&Vec<Cyclo>, DistError> {
        self.level(m)?.get(&c).ok_or(DistError::NotAClass { class: c, level: m })
    }

    /// Replace a single value (used to build corrupted fixtures).
    pub fn set_value(&mut self, m: u32, c: Class, value: Vec<Cyclo>) -> Result<(), DistError> {
        if value.len() != self.dim() {
            return Err(DistError::DimensionMismatch { expected: self.dim(), got: value.len() });
        }
        let min = self.min_level();
        let max = self.depth();
        let slot = self
            .levels
            .get_mut(&m)
            .ok_or(DistError::MissingLevel { level: m, min, max })?
            .get_mut(&c)
            .ok_or(DistError::NotAClass { class: c, level: m })?;
        *slot = value;
        Ok(())
    }

    /// Total mass `μ(C(p^m))` at the shallowest level.
    pub fn total_mass(&self) -> Vec<Cyclo> {
        sum_vectors(self.dim(), self.level(self.min_level()).expect("stored").values())
    }
}

pub(crate) fn sum_vectors<'a>(d: usize, it: impl Iterator<Item = &'a Vec<Cyclo>>) -> Vec<Cyclo> {
    let mut acc = vec![Cyclo::zero(); d];
    for v in it {
        for (a, b) in acc.iter_mut().zip(v) {
            *a = &*a + b;
        }
    }
    acc
}

/// A coset `x + p^m` singled out by a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetWitness {
    pub m: u32,
    pub class: Class,
    pub expected: Vec<Cyclo>,
    pub got: Vec<Cyclo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub ok: bool,
    pub checked: usize,
    pub witness: Option<CosetWitness>,
}

/// Check `μ(x + p^m) = Σ_{a mod p} μ(x + a·p^m + p^{m+1})` for every stored consecutive pair.
pub fn check_distribution_relation(mu: &Distribution) -> Result<RelationReport, DistError> {
    check_distribution_relation_with(mu, Strategy::default())
}

pub fn check_distribution_relation_with(mu: &Distribution, strategy: Strategy) -> Result<RelationReport, DistError> {
    if mu.min_level() == mu.depth() {
        return Err(DistError::InvalidParameters("at least two stored levels are required".into()));
    }
    let tower = mu.tower;
    let jobs: Vec<(u32, Class)> =
        (mu.min_level()..mu.depth()).flat_map(|m| tower.classes(m).into_iter().map(move |c| (m, c))).collect();
    let results = par::map(strategy, &jobs, |&(m, c)| {
        let upper = mu.level(m + 1).expect("stored");
        let sum = sum_vectors(mu.dim(), tower.lifts(c, m).map(|l| &upper[&l]));
        let own = mu.value(m, c).expect("stored");
        (sum != *own).then(|| CosetWitness { m, class: c, expected: sum, got: own.clone() })
    });
    let witness = results.into_iter().flatten().next();
    Ok(RelationReport { ok: witness.is_none(), checked: jobs.len(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundednessWitness {
    pub m: u32,
    pub class: Class,
    pub coordinate: i64,
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundednessReport {
    pub ok: bool,
    pub floor: i64,
    /// Smallest valuation over all stored values (`None` if every value is zero).
    pub min_valuation: Option<i64>,
    pub witness: Option<BoundednessWitness>,
}

/// Check that every coordinate of every stored value has `p`-adic valuation `≥ floor`.
///
/// The valuation of an element of `Q(ζ_N)` is measured on the power basis, i.e. with
/// respect to the lattice `Z_(p)[ζ_N]`; the floor absorbs the choice of lattice.
pub fn check_boundedness(mu: &Distribution, floor: i64) -> BoundednessReport {
    let p = mu.p();
    let mut min_valuation: Option<i64> = None;
    let mut witness = None;
    for (&m, table) in &mu.levels {
        for (c, v) in table {
            for (coord, x) in mu.coords.iter().zip(v) {
                if let PadicVal::Finite(val) = x.min_coeff_valuation(p) {
                    min_valuation = Some(min_valuation.map_or(val, |mv| mv.min(val)));
                    if val < floor && witness.is_none() {
                        witness = Some(BoundednessWitness { m, class: *c, coordinate: *coord, valuation: val });
                    }
                }
            }
        }
    }
    BoundednessReport { ok: witness.is_none(), floor, min_valuation, witness }
}

#[derive(Serialize, Deserialize)]
struct CosetWire {
    #[serde(flatten)]
    class: Class,
    value: Vec<Cyclo>,
}

#[derive(Serialize, Deserialize)]
struct LevelWire {
    m: u32,
    cosets: Vec<CosetWire>,
}

#[derive(Serialize, Deserialize)]
struct DistributionWire {
    p: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    class_number: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kappa: Option<Cyclo>,
    levels: Vec<LevelWire>,
}

fn one() -> u64 {
    1
}

fn is_one(h: &u64) -> bool {
    *h == 1
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DistributionWire {
            p: self.tower.p,
            class_number: self.tower.class_number,
            coords: Some(self.coords.clone()),
            kappa: self.kappa.clone(),
            levels: self
                .levels
                .iter()
                .map(|(&m, t)| LevelWire {
                    m,
                    cosets: t.iter().map(|(c, v)| CosetWire { class: *c, value: v.clone() }).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Distribution, D::Error> {
        use serde::de::Error;
        let w = DistributionWire::deserialize(d)?;
        let tower = RayTower::new(w.p, w.class_number).map_err(D::Error::custom)?;
        let dim = w.levels.first().and_then(|l| l.cosets.first()).map_or(0, |c| c.value.len());
        let coords = w.coords.unwrap_or_else(|| (0..dim as i64).collect());
        let levels = w
            .levels
            .into_iter()
            .map(|l| (l.m, l.cosets.into_iter().map(|c| (c.class, c.value)).collect()))
            .collect();
        let mut mu = Distribution::from_levels(tower, coords, levels).map_err(D::Error::custom)?;
        mu.kappa = w.kappa;
        Ok(mu)
    }
}
