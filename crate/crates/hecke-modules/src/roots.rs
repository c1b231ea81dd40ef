//! Hecke roots `λ_1, …, λ_k` and the associated eigenvalues `η_ν`.

use exact_arith::{Cyclo, Rat};
use serde::Serialize;

use crate::module::q_pow;
use crate::ModuleError;

/// A tuple of Hecke roots. The first `count` roots are the ones projected
/// onto; any further roots only serve to define `η_ν` for larger `ν`
/// (needed for the denominators of the normalised projection).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeRoots {
    lambda: Vec<Cyclo>,
    count: usize,
    #[serde(with = "exact_arith::rat_serde")]
    q: Rat,
}

impl HeckeRoots {
    /// Roots `λ_1, …, λ_k`, all of which are projected onto.
    pub fn new(lambda: Vec<Cyclo>, q: Rat) -> HeckeRoots {
        let count = lambda.len();
        HeckeRoots { lambda, count, q }
    }

    /// Restrict the projection to the first `count` roots, keeping the
    /// remaining ones for the `η_ν`.
    pub fn projecting(mut self, count: usize) -> HeckeRoots {
        self.count = count.min(self.lambda.len());
        self
    }

    pub fn lambda(&self) -> &[Cyclo] {
        &self.lambda
    }

    /// The roots projected onto, `λ_1, …, λ_count`.
    pub fn projected(&self) -> &[Cyclo] {
        &self.lambda[..self.count]
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// `η_ν = q^{−ν(ν−1)/2} λ_1⋯λ_ν` (with `η_0 = 1`); `None` if fewer than `ν` roots are known.
    pub fn eta(&self, nu: usize) -> Option<Cyclo> {
        if nu > self.lambda.len() {
            return None;
        }
        let prod: Cyclo = self.lambda[..nu].iter().cloned().product();
        let nu = nu as i64;
        Some(&prod * &q_pow(&self.q, -nu * (nu - 1) / 2))
    }

    /// All `η_1, …, η_k`.
    pub fn etas(&self) -> Vec<Cyclo> {
        (1..=self.lambda.len()).filter_map(|nu| self.eta(nu)).collect()
    }

    /// Require the roots to be non-zero and pairwise distinct.
    pub fn check_distinct_nonzero(&self) -> Result<(), ModuleError> {
        for (i, a) in self.lambda.iter().enumerate() {
            if a.is_zero() {
                return Err(ModuleError::ZeroRoot { index: i + 1 });
            }
            if let Some(j) = self.lambda[i + 1..].iter().position(|b| b == a) {
                return Err(ModuleError::RepeatedRoot { i: i + 1, j: i + j + 2 });
            }
        }
        Ok(())
    }

    /// The dual root `λ^∨ = q^{n−1} λ^{−1}` for `GL_n`.
    pub fn dual_root(lambda: &Cyclo, n: usize, q: &Rat) -> Cyclo {
        let inv = lambda.inv().expect("dual root of zero");
        &inv * &q_pow(q, n as i64 - 1)
    }

    /// Entrywise dual roots for `GL_n`, in the same order.
    pub fn dual(&self, n: usize) -> Result<HeckeRoots, ModuleError> {
        self.check_nonzero()?;
        let lambda = self.lambda.iter().map(|l| HeckeRoots::dual_root(l, n, &self.q)).collect();
        Ok(HeckeRoots { lambda, count: self.count, q: self.q.clone() })
    }

    fn check_nonzero(&self) -> Result<(), ModuleError> {
        match self.lambda.iter().position(Cyclo::is_zero) {
            Some(i) => Err(ModuleError::ZeroRoot { index: i + 1 }),
            None => Ok(()),
        }
    }
}
