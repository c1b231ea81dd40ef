//! Integration of tower characters against a distribution and Fourier inversion.

use exact_arith::par::{self, Strategy};
use exact_arith::Cyclo;
use serde::Serialize;

use crate::{tower_characters, Class, DistError, Distribution, TowerChar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Integral {
    /// Level `m` at which `Σ_{x ∈ C(p^m)} χ(x)·μ(x + p^m)` was evaluated.
    pub level: u32,
    pub value: Vec<Cyclo>,
    /// The same sum one level deeper, when that level is stored.
    pub deeper_value: Option<Vec<Cyclo>>,
    pub level_stable: bool,
}

fn sum_at(mu: &Distribution, chi: &TowerChar, m: u32) -> Result<Vec<Cyclo>, DistError> {
    let tower = mu.tower();
    let mut acc = vec![Cyclo::zero(); mu.dim()];
    for (c, v) in mu.level(m)? {
        let w = chi.value(tower, *c);
        if w.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            *a = &*a + &(&w * x);
        }
    }
    Ok(acc)
}

/// `∫ χ dμ` at the shallowest stored level through which `χ` factors, re-checked one level deeper.
pub fn integrate_character(mu: &Distribution, chi: &TowerChar) -> Result<Integral, DistError> {
    let conductor = chi.conductor_exponent();
    if conductor > mu.depth() {
        return Err(DistError::ConductorTooDeep { conductor, depth: mu.depth() });
    }
    if chi.chi.p() != mu.p() {
        return Err(DistError::Incompatible);
    }
    let level = conductor.max(mu.min_level());
    integrate_at(mu, chi, level)
}

/// `Σ_{x ∈ C(p^m)} χ(x)·μ(x + p^m)` at a prescribed level (`m ≥` conductor exponent).
pub fn integrate_at(mu: &Distribution, chi: &TowerChar, level: u32) -> Result<Integral, DistError> {
    let chi_m = TowerChar::new(chi.chi.at_level(level)?, chi.class_exponent);
    let value = sum_at(mu, &chi_m, level)?;
    let deeper_value = if level < mu.depth() {
        let chi_d = TowerChar::new(chi.chi.at_level(level + 1)?, chi.class_exponent);
        Some(sum_at(mu, &chi_d, level + 1)?)
    } else {
        None
    };
    let level_stable = deeper_value.as_ref().map_or(true, |d| *d == value);
    Ok(Integral { level, value, deeper_value, level_stable })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourierReport {
    pub level: u32,
    pub class: Class,
    pub characters: usize,
    pub lhs: Vec<Cyclo>,
    pub rhs: Vec<Cyclo>,
    pub ok: bool,
}

/// `Σ_χ χ(x_0)^{−1}·∫χ dμ = |C(p^m)|·μ(x_0 + p^m)` over the full dual group of `C(p^m)`.
pub fn fourier_inversion(mu: &Distribution, m: u32, x0: Class, strategy: Strategy) -> Result<FourierReport, DistError> {
    let tower = *mu.tower();
    let own = mu.value(m, x0)?.clone();
    let chars = tower_characters(&tower, m)?;
    let terms = par::map(strategy, &chars, |chi| -> Result<Vec<Cyclo>, DistError> {
        let integral = integrate_character(mu, chi)?;
        let w = chi.inverse(&tower).value(&tower, x0);
        Ok(integral.value.iter().map(|x| &w * x).collect())
    });
    let mut lhs = vec![Cyclo::zero(); mu.dim()];
    for t in terms {
        for (a, x) in lhs.iter_mut().zip(&t?) {
            *a = &*a + x;
        }
    }
    let size = Cyclo::from_int(tower.size(m) as i64);
    let rhs: Vec<Cyclo> = own.iter().map(|x| &size * x).collect();
    let ok = lhs == rhs;
    Ok(FourierReport { level: m, class: x0, characters: chars.len(), lhs, rhs, ok })
}
