//! Modules over the Iwahori-level Hecke algebra given by commuting `U_i`-actions.

use exact_arith::{Cyclo, Rat};
use num_traits::{One, Signed};
use serde::Serialize;

use crate::matrix::{CycloMatrix, Vector};
use crate::roots::HeckeRoots;
use crate::ModuleError;

/// A finite-dimensional module over `Q(zeta_m)` with commuting actions of
/// `U_1, …, U_n`. The derived operators are
/// `V_{p,ν} = q^{−ν(ν−1)/2} U_1⋯U_ν` (`V_{p,0} = 1`),
/// `V_p = V_{p,1}⋯V_{p,n−1}` and `V_p' = V_{p,n}·V_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeModule {
    n: usize,
    #[serde(with = "exact_arith::rat_serde")]
    q: Rat,
    ops_u: Vec<CycloMatrix>,
    ops_v: Vec<CycloMatrix>,
    v_p: CycloMatrix,
    v_p_prime: CycloMatrix,
}

/// `q^e` for a possibly negative exponent.
pub(crate) fn q_pow(q: &Rat, e: i64) -> Cyclo {
    let r = if e >= 0 { num_traits::pow(q.clone(), e as usize) } else { num_traits::pow(q.recip(), e.unsigned_abs() as usize) };
    Cyclo::from_rat(r)
}

impl HeckeModule {
    /// Build a module from the `U_i`-matrices; checks that they are square of
    /// equal size and pairwise commute.
    pub fn new(n: usize, q: Rat, ops_u: Vec<CycloMatrix>) -> Result<HeckeModule, ModuleError> {
        if n == 0 || ops_u.len() != n {
            return Err(ModuleError::InvalidParameters(format!("expected {n} U-operators, got {}", ops_u.len())));
        }
        if !q.is_positive() || q.is_one() {
            return Err(ModuleError::InvalidParameters(format!("q must be a rational > 0 and != 1, got {q}")));
        }
        let dim = ops_u[0].dim();
        if let Some(bad) = ops_u.iter().find(|u| u.dim() != dim) {
            return Err(ModuleError::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if !ops_u[i].commutes_with(&ops_u[j]) {
                    return Err(ModuleError::NonCommuting { i: i + 1, j: j + 1 });
                }
            }
        }
        let mut ops_v = vec![CycloMatrix::identity(dim)];
        let mut prod = CycloMatrix::identity(dim);
        for (k, u) in ops_u.iter().enumerate() {
            prod = prod.mul(u);
            let nu = (k + 1) as i64;
            ops_v.push(prod.scale(&q_pow(&q, -nu * (nu - 1) / 2)));
        }
        let v_p = ops_v[1..n].iter().fold(CycloMatrix::identity(dim), |acc, v| acc.mul(v));
        let v_p_prime = ops_v[n].mul(&v_p);
        Ok(HeckeModule { n, q, ops_u, ops_v, v_p, v_p_prime })
    }

    /// The diagonal module whose basis vector `e_k` has `U_i`-eigenvalue `spectra[k][i]`.
    pub fn from_spectra(n: usize, q: Rat, spectra: &[Vec<Cyclo>]) -> Result<HeckeModule, ModuleError> {
        if let Some(bad) = spectra.iter().find(|s| s.len() != n) {
            return Err(ModuleError::DimensionMismatch { expected: n, got: bad.len() });
        }
        let ops = (0..n).map(|i| CycloMatrix::diag(spectra.iter().map(|s| s[i].clone()).collect())).collect();
        HeckeModule::new(n, q, ops)
    }

    /// The module transported along the basis change `P`: every operator `A` becomes `P A P^{−1}`.
    pub fn conjugated(&self, p: &CycloMatrix) -> Result<HeckeModule, ModuleError> {
        let p_inv = p.inverse().ok_or_else(|| ModuleError::InvalidParameters("conjugating matrix is singular".into()))?;
        let ops = self.ops_u.iter().map(|u| p.mul(u).mul(&p_inv)).collect();
        HeckeModule::new(self.n, self.q.clone(), ops)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.ops_u[0].dim()
    }

    /// `U_i` for `1 ≤ i ≤ n`.
    pub fn u(&self, i: usize) -> &CycloMatrix {
        &self.ops_u[i - 1]
    }

    pub fn ops_u(&self) -> &[CycloMatrix] {
        &self.ops_u
    }

    /// `V_{p,ν}` for `0 ≤ ν ≤ n`.
    pub fn v(&self, nu: usize) -> &CycloMatrix {
        &self.ops_v[nu]
    }

    pub fn v_p(&self) -> &CycloMatrix {
        &self.v_p
    }

    pub fn v_p_prime(&self) -> &CycloMatrix {
        &self.v_p_prime
    }

    /// The operator `H_p(λ) = ∏_i (λ − U_i)`.
    pub fn hecke_polynomial(&self, lambda: &Cyclo) -> CycloMatrix {
        let scalar = CycloMatrix::scalar(self.dim(), lambda.clone());
        self.ops_u.iter().fold(CycloMatrix::identity(self.dim()), |acc, u| acc.mul(&scalar.sub(u)))
    }

    /// `H_p(λ)·m`.
    pub fn apply_h(&self, m: &[Cyclo], lambda: &Cyclo) -> Vector {
        let scalar = CycloMatrix::scalar(self.dim(), lambda.clone());
        self.ops_u.iter().fold(m.to_vec(), |acc, u| scalar.sub(u).apply(&acc))
    }

    /// Whether `H_p(λ_i)·m = 0` for every listed root (membership in `M^λ`).
    pub fn annihilated_by(&self, m: &[Cyclo], roots: &[Cyclo]) -> bool {
        roots.iter().all(|l| crate::matrix::is_zero_vec(&self.apply_h(m, l)))
    }

    /// Whether `V_{p,ν}·m = η_ν·m` for `1 ≤ ν ≤ count` (membership in `M_λ`).
    pub fn in_eigenspace(&self, m: &[Cyclo], roots: &HeckeRoots, count: usize) -> bool {
        (1..=count.min(self.n)).all(|nu| match roots.eta(nu) {
            Some(eta) => self.ops_v[nu].apply(m) == crate::matrix::scale_vec(m, &eta),
            None => false,
        })
    }

    /// If `V_{p,n}` acts on `m` by a scalar, return it.
    pub fn central_scalar(&self, m: &[Cyclo]) -> Option<Cyclo> {
        crate::matrix::proportionality(&self.ops_v[self.n].apply(m), m)
    }

    /// The contragredient module `M^∨`: the same vector space with the
    /// twisted action `U_i^∨ = q^{n−1} U_{n+1−i}^{−1}`, so that
    /// `V_{p,ν}^∨ = V_{p,n}^{−1} V_{p,n−ν}` and `V_p^∨ = V_{p,n}^{−(n−1)} V_p`
    /// (both asserted). Requires `V_{p,n}` to be invertible.
    pub fn contragredient(&self) -> Result<HeckeModule, ModuleError> {
        let n = self.n;
        let vn_inv = self.ops_v[n].inverse().ok_or(ModuleError::NotInvertible)?;
        let scale = q_pow(&self.q, n as i64 - 1);
        let ops = (1..=n)
            .map(|i| self.u(n + 1 - i).inverse().map(|inv| inv.scale(&scale)).ok_or(ModuleError::NotInvertible))
            .collect::<Result<Vec<_>, _>>()?;
        let dual = HeckeModule::new(n, self.q.clone(), ops)?;
        for nu in 0..=n {
            if dual.ops_v[nu] != vn_inv.mul(&self.ops_v[n - nu]) {
                return Err(ModuleError::TwistedRelation(format!("V_p,{nu}")));
            }
        }
        if dual.v_p != vn_inv.pow(n as u32 - 1).mul(&self.v_p) {
            return Err(ModuleError::TwistedRelation("V_p".into()));
        }
        Ok(dual)
    }

    /// Check the Hecke reciprocity: if `H_p(λ)m = 0` then `H_p(q^{n−1}/λ)` kills `m` in `M^∨`.
    pub fn reciprocity_holds(&self, dual: &HeckeModule, m: &[Cyclo], lambda: &Cyclo) -> bool {
        if lambda.is_zero() || !crate::matrix::is_zero_vec(&self.apply_h(m, lambda)) {
            return false;
        }
        let dual_root = HeckeRoots::dual_root(lambda, self.n, &self.q);
        crate::matrix::is_zero_vec(&dual.apply_h(m, &dual_root))
    }
}

/// Basis vector `e_k` of length `dim`.
pub fn basis_vector(dim: usize, k: usize) -> Vector {
    (0..dim).map(|i| if i == k { Cyclo::one() } else { Cyclo::zero() }).collect()
}

/// The zero vector of length `dim`.
pub fn zero_vector(dim: usize) -> Vector {
    vec![Cyclo::zero(); dim]
}
