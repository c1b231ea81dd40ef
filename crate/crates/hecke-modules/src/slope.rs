//! The scalars `κ_λ`, the slope of a pair of root tuples, and ordinarity.

use exact_arith::padic::valuation_unchecked;
use exact_arith::{is_prime, Cyclo, PadicVal, Rat};
use serde::Serialize;

use crate::module::q_pow;
use crate::ModuleError;

/// Finite-slope data for a pair `(λ, λ′)` of root tuples of length `n − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeData {
    pub n: usize,
    pub p: u64,
    #[serde(with = "exact_arith::rat_serde")]
    pub q: Rat,
    pub lambda: Vec<Cyclo>,
    pub lambda_prime: Vec<Cyclo>,
    pub kappa: Cyclo,
    pub kappa_prime: Cyclo,
    pub nu_min: i64,
    /// `None` encodes an infinite slope (`κ_λ κ_λ′ = 0`).
    pub slope: Option<i64>,
    pub finite_slope: bool,
    pub ordinary: bool,
    /// Normalisation of the local Whittaker vectors, supplied by the caller.
    pub whittaker_normalized: bool,
}

/// `κ_λ = q^{−n(n−1)(n−2)/6} ∏_{ν=1}^{n−1} λ_ν^{n−ν}` for a tuple of length `n − 1`.
pub fn kappa(lambda: &[Cyclo], n: usize, q: &Rat) -> Cyclo {
    let n_i = n as i64;
    let prod: Cyclo = lambda
        .iter()
        .enumerate()
        .map(|(k, l)| l.pow(n_i - 1 - k as i64).expect("non-negative exponent"))
        .product();
    &prod * &q_pow(q, -n_i * (n_i - 1) * (n_i - 2) / 6)
}

/// Compute `κ_λ`, `κ_λ′` and the slope `ν_p(κ_λ κ_λ′ ϖ^{−ν_min n(n−1)/2})`
/// (with `ν_p(ϖ) = 1`). The slope is defined for rational `κ_λ κ_λ′` only.
pub fn slope_data(
    lambda: &[Cyclo],
    lambda_prime: &[Cyclo],
    nu_min: i64,
    q: &Rat,
    p: u64,
) -> Result<SlopeData, ModuleError> {
    if !is_prime(p) {
        return Err(ModuleError::InvalidParameters(format!("{p} is not prime")));
    }
    if lambda.is_empty() || lambda.len() != lambda_prime.len() {
        return Err(ModuleError::InvalidParameters(format!(
            "λ and λ′ must both have length n − 1 ≥ 1 (got {} and {})",
            lambda.len(),
            lambda_prime.len()
        )));
    }
    let n = lambda.len() + 1;
    let kappa_l = kappa(lambda, n, q);
    let kappa_p = kappa(lambda_prime, n, q);
    let product = &kappa_l * &kappa_p;
    let rational = product.to_rat().ok_or_else(|| ModuleError::NonRational(format!("κ_λ·κ_λ′ = {product}")))?;
    let shift = nu_min * (n * (n - 1) / 2) as i64;
    let slope = match valuation_unchecked(&rational, p) {
        PadicVal::Finite(v) => Some(v - shift),
        PadicVal::Infinite => None,
    };
    Ok(SlopeData {
        n,
        p,
        q: q.clone(),
        lambda: lambda.to_vec(),
        lambda_prime: lambda_prime.to_vec(),
        kappa: kappa_l,
        kappa_prime: kappa_p,
        nu_min,
        finite_slope: slope.is_some(),
        ordinary: slope == Some(0),
        slope,
        whittaker_normalized: true,
    })
}

impl SlopeData {
    /// Record the caller's statement about the Whittaker normalisation.
    pub fn with_whittaker(mut self, normalized: bool) -> SlopeData {
        self.whittaker_normalized = normalized;
        self
    }

    /// All three finite-slope conditions, with the Whittaker one as supplied.
    pub fn is_finite_slope_datum(&self) -> bool {
        self.finite_slope && self.whittaker_normalized
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::int;

    fn c(x: i64) -> Cyclo {
        Cyclo::from_int(x)
    }

    #[test]
    fn unit_roots_are_ordinary() {
        let d = slope_data(&[c(1)], &[c(1)], 0, &int(2), 2).unwrap();
        assert_eq!(d.kappa, c(1));
        assert_eq!(d.kappa_prime, c(1));
        assert_eq!(d.slope, Some(0));
        assert!(d.ordinary);
    }

    #[test]
    fn gl3_example() {
        let d = slope_data(&[c(2), c(1)], &[c(1), c(1)], 0, &int(2), 2).unwrap();
        assert_eq!(d.kappa, c(2));
        assert_eq!(d.kappa_prime, Cyclo::from_rat(exact_arith::rat(1, 2)));
        assert_eq!(d.slope, Some(0));
        let d = slope_data(&[c(2), c(1)], &[c(2), c(1)], 0, &int(2), 2).unwrap();
        assert_eq!(d.slope, Some(2));
        assert!(!d.ordinary);
        let d = slope_data(&[c(2), c(1)], &[c(2), c(1)], 1, &int(2), 2).unwrap();
        assert_eq!(d.slope, Some(-1));
    }

    #[test]
    fn zero_kappa_is_infinite_slope() {
        let d = slope_data(&[c(0), c(1)], &[c(1), c(1)], 0, &int(2), 2).unwrap();
        assert_eq!(d.slope, None);
        assert!(!d.finite_slope);
        assert!(!d.ordinary);
    }

    #[test]
    fn whittaker_flag() {
        let d = slope_data(&[c(1)], &[c(1)], 0, &int(3), 3).unwrap().with_whittaker(false);
        assert!(!d.is_finite_slope_datum());
    }
}
