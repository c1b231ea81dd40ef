use exact_arith::{is_prime, int, LaurentPoly, Rat};
use num_traits::pow;
use serde::Serialize;

use crate::GlnError;

/// How the level parameter `f` is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FValue {
    /// `f` is the formal Laurent variable `f` (and the uniformiser the variable `varpi`).
    Symbolic,
    /// `f = p^nu` numerically, with the uniformiser fixed to `p`.
    Power(u32),
}

/// Rank, prime, Iwahori level and level parameter of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GlnContext {
    pub n: usize,
    pub p: u64,
    pub r: u32,
    pub f: FValue,
}

impl GlnContext {
    fn validate(n: usize, p: u64, r: u32) -> Result<(), GlnError> {
        if n < 2 {
            return Err(GlnError::InvalidContext(format!("rank n = {n} must be at least 2")));
        }
        if !is_prime(p) {
            return Err(GlnError::InvalidContext(format!("{p} is not prime")));
        }
        if r < 1 {
            return Err(GlnError::InvalidContext("Iwahori level r must be at least 1".into()));
        }
        Ok(())
    }

    /// Context with a formal level parameter `f`.
    pub fn symbolic(n: usize, p: u64, r: u32) -> Result<GlnContext, GlnError> {
        Self::validate(n, p, r)?;
        Ok(GlnContext { n, p, r, f: FValue::Symbolic })
    }

    /// Context with `f = p^nu`; requires `nu >= r`.
    pub fn numeric(n: usize, p: u64, r: u32, nu: u32) -> Result<GlnContext, GlnError> {
        Self::validate(n, p, r)?;
        if nu < r {
            return Err(GlnError::InvalidContext(format!("v_p(f) = {nu} is below the level r = {r}")));
        }
        Ok(GlnContext { n, p, r, f: FValue::Power(nu) })
    }

    /// The same context at a different rank.
    pub fn with_rank(&self, n: usize) -> GlnContext {
        GlnContext { n, ..*self }
    }

    /// `v_p(f)` when numeric.
    pub fn f_exponent(&self) -> Option<u32> {
        match self.f {
            FValue::Power(nu) => Some(nu),
            FValue::Symbolic => None,
        }
    }

    /// `f` as a rational, when numeric.
    pub fn f_rat(&self) -> Option<Rat> {
        self.f_exponent().map(|nu| pow(int(self.p as i64), nu as usize))
    }

    /// `f` as a Laurent polynomial (variable or constant).
    pub fn f_poly(&self) -> LaurentPoly {
        match self.f_rat() {
            Some(v) => LaurentPoly::from_rat(v),
            None => LaurentPoly::var("f"),
        }
    }

    /// The uniformiser: `p` in numeric contexts, the variable `varpi` otherwise.
    pub fn varpi_poly(&self) -> LaurentPoly {
        match self.f {
            FValue::Power(_) => LaurentPoly::from_int(self.p as i64),
            FValue::Symbolic => LaurentPoly::var("varpi"),
        }
    }
}
