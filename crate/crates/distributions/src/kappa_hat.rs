//! The interpolation factor `κ̂^ν(f_χ) = N(f_χ)^{n(n−1)(n−2)/6 + (ν−ν_min)·n(n−1)/2}·(κ_λκ_λ′)^{−s}`.

use exact_arith::{Cyclo, Rat};
use gauss_sums::MultChar;
use hecke_modules::SlopeData;
use num_traits::One;
use serde::Serialize;

use crate::DistError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolationInput {
    pub chi: MultChar,
    pub nu: i64,
    pub nu_min: i64,
    /// `κ_λ·κ_λ′`.
    pub kappa_product: Cyclo,
}

impl InterpolationInput {
    pub fn new(chi: MultChar, nu: i64, nu_min: i64, kappa_product: Cyclo) -> InterpolationInput {
        InterpolationInput { chi, nu, nu_min, kappa_product }
    }

    pub fn from_slope(chi: MultChar, nu: i64, slope: &SlopeData) -> InterpolationInput {
        InterpolationInput { chi, nu, nu_min: slope.nu_min, kappa_product: &slope.kappa * &slope.kappa_prime }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaHat {
    pub n: usize,
    pub p: u64,
    /// `s` with `N(f_χ) = p^s`.
    pub s: u32,
    pub norm_exponent: i64,
    /// The same exponent recounted from triples and pairs of indices.
    pub norm_exponent_audit: i64,
    pub kappa_exponent: i64,
    pub value: Cyclo,
}

impl KappaHat {
    pub fn audit_ok(&self) -> bool {
        self.norm_exponent == self.norm_exponent_audit
    }
}

fn audit_exponent(n: usize, shift: i64) -> i64 {
    let triples = (1..=n).flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |_| ()))).count() as i64;
    let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |_| ())).count() as i64;
    triples + shift * pairs
}

pub fn kappa_hat(input: &InterpolationInput, n: usize) -> Result<KappaHat, DistError> {
    if n < 2 {
        return Err(DistError::InvalidParameters("n must be at least 2".into()));
    }
    let s = input.chi.conductor_exponent();
    if s == 0 {
        return Err(DistError::TrivialConductor);
    }
    if input.kappa_product.is_zero() {
        return Err(DistError::NotFiniteSlope);
    }
    let ni = n as i64;
    let shift = input.nu - input.nu_min;
    let norm_exponent = ni * (ni - 1) * (ni - 2) / 6 + shift * ni * (ni - 1) / 2;
    let p = input.chi.p();
    let norm = Rat::from_integer(p.into()).pow(s as i32);
    let norm_part = if norm_exponent >= 0 { norm.pow(norm_exponent as i32) } else { Rat::one() / norm.pow((-norm_exponent) as i32) };
    let kappa_exponent = -(s as i64);
    let value = input.kappa_product.pow(kappa_exponent).map_err(|_| DistError::NotFiniteSlope)?.scale(&norm_part);
    Ok(KappaHat { n, p, s, norm_exponent, norm_exponent_audit: audit_exponent(n, shift), kappa_exponent, value })
}
