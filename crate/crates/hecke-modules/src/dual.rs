//! Modules over `H_I ⊗ H_{I′}` (for `GL_n × GL_{n−1}`) and the compatibility
//! of the modification operators with the contragredient.

use exact_arith::Cyclo;
use serde::Serialize;

use crate::matrix::{is_zero_vec, proportionality, scale_vec, CycloMatrix, Vector};
use crate::module::{q_pow, HeckeModule};
use crate::projection::project0;
use crate::roots::HeckeRoots;
use crate::slope::kappa;
use crate::ModuleError;

/// A module with commuting actions of the `GL_n` operators (`left`) and the
/// `GL_{n−1}` operators (`right`) on the same vector space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairModule {
    left: HeckeModule,
    right: HeckeModule,
}

impl PairModule {
    pub fn new(left: HeckeModule, right: HeckeModule) -> Result<PairModule, ModuleError> {
        if left.n() < 2 || right.n() + 1 != left.n() {
            return Err(ModuleError::InvalidParameters(format!(
                "expected GL_n × GL_(n−1) operators, got n = {} and {}",
                left.n(),
                right.n()
            )));
        }
        if left.q() != right.q() {
            return Err(ModuleError::InvalidParameters("both factors must use the same q".into()));
        }
        if left.dim() != right.dim() {
            return Err(ModuleError::DimensionMismatch { expected: left.dim(), got: right.dim() });
        }
        for (i, a) in left.ops_u().iter().enumerate() {
            for (j, b) in right.ops_u().iter().enumerate() {
                if !a.commutes_with(b) {
                    return Err(ModuleError::NonCommutingPair { left: format!("U_{}", i + 1), right: format!("U'_{}", j + 1) });
                }
            }
        }
        Ok(PairModule { left, right })
    }

    /// The tensor product: `U_i` acts as `U_i ⊗ 1`, `U′_j` as `1 ⊗ U′_j`.
    pub fn tensor(a: &HeckeModule, b: &HeckeModule) -> Result<PairModule, ModuleError> {
        let (ia, ib) = (CycloMatrix::identity(a.dim()), CycloMatrix::identity(b.dim()));
        let left = HeckeModule::new(a.n(), a.q().clone(), a.ops_u().iter().map(|u| u.kron(&ib)).collect())?;
        let right = HeckeModule::new(b.n(), b.q().clone(), b.ops_u().iter().map(|u| ia.kron(u)).collect())?;
        PairModule::new(left, right)
    }

    pub fn left(&self) -> &HeckeModule {
        &self.left
    }

    pub fn right(&self) -> &HeckeModule {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    /// Transport along the basis change `P` (applied to both factors).
    pub fn conjugated(&self, p: &CycloMatrix) -> Result<PairModule, ModuleError> {
        PairModule::new(self.left.conjugated(p)?, self.right.conjugated(p)?)
    }

    /// `U_p = V_p ⊗ V_p′`, with `V_p` for `GL_n` and `V_p′` for `GL_{n−1}`.
    pub fn u_p(&self) -> CycloMatrix {
        self.left.v_p().mul(self.right.v_p_prime())
    }

    /// Twist both factors by the main involution.
    pub fn contragredient(&self) -> Result<PairModule, ModuleError> {
        PairModule::new(self.left.contragredient()?, self.right.contragredient()?)
    }
}

/// Outcome of comparing `(Π⁰_λ ⊗ Π⁰_λ″ m)^∨` with `Π⁰_{λ^∨} ⊗ Π⁰_{(λ′^∨)′}(m^∨)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualProjectionReport {
    pub n: usize,
    /// `λ_n`, recovered from the scalar by which `V_{p,n}` acts.
    pub lambda_n: Cyclo,
    /// `λ^∨ = (λ_n^∨, …, λ_2^∨)`.
    pub lambda_dual: Vec<Cyclo>,
    /// `λ′^∨ = (λ′_{n−1}^∨, …, λ′_1^∨)`.
    pub lambda_prime_dual: Vec<Cyclo>,
    pub kappa: Cyclo,
    pub kappa_prime: Cyclo,
    pub kappa_dual: Cyclo,
    pub kappa_prime_dual: Cyclo,
    /// `U_p m̃ = κ_λ κ_λ′ m̃`.
    pub eigenvalue_ok: bool,
    /// `U_p^∨ m̃^∨ = κ_{λ^∨} κ_{λ′^∨} m̃^∨`.
    pub dual_eigenvalue_ok: bool,
    pub modified: Vector,
    pub dual_modified: Vector,
    /// `C` with `C·m̃^∨ = Π⁰_{λ^∨} ⊗ Π⁰_{(λ′^∨)′}(m^∨)`.
    pub constant: Cyclo,
    pub ok: bool,
}

/// Verify that the modification operators commute with the contragredient up
/// to a non-zero constant, and that the `U_p`-eigenvalues transform as
/// `κ_λ κ_λ′ ↦ κ_{λ^∨} κ_{λ′^∨}`.
///
/// `lambda` and `lambda_prime` are the `n − 1` Hecke roots of `m` for the two
/// factors. `V_{p,n}` must act on `m` by a non-zero scalar and `V′_{p,n−1}` by
/// `η′_{n−1}`.
pub fn verify_dual_projection(
    module: &PairModule,
    m: &[Cyclo],
    lambda: &[Cyclo],
    lambda_prime: &[Cyclo],
) -> Result<DualProjectionReport, ModuleError> {
    let n = module.n();
    let q = module.left.q().clone();
    if lambda.len() != n - 1 || lambda_prime.len() != n - 1 {
        return Err(ModuleError::InvalidParameters(format!("expected {} roots for each factor", n - 1)));
    }
    if m.len() != module.dim() {
        return Err(ModuleError::DimensionMismatch { expected: module.dim(), got: m.len() });
    }
    if is_zero_vec(m) {
        return Err(ModuleError::Degenerate("m = 0".into()));
    }
    let central = module
        .left
        .central_scalar(m)
        .filter(|c| !c.is_zero())
        .ok_or_else(|| ModuleError::NotFiniteSlope("V_p,n does not act on m by a non-zero scalar".into()))?;
    let partial: Cyclo = lambda.iter().cloned().product();
    let lambda_n = &(&central * &q_pow(&q, (n * (n - 1) / 2) as i64))
        * &partial.inv().map_err(|_| ModuleError::ZeroRoot { index: 0 })?;
    let right_roots = HeckeRoots::new(lambda_prime.to_vec(), q.clone());
    let eta_prime = right_roots.eta(n - 1).expect("n − 1 roots");
    if module.right.v(n - 1).apply(m) != scale_vec(m, &eta_prime) {
        return Err(ModuleError::NotFiniteSlope("V'_p,n−1 does not act on m by η'_(n−1)".into()));
    }
    let kappa_l = kappa(lambda, n, &q);
    let kappa_p = kappa(lambda_prime, n, &q);
    if (&kappa_l * &kappa_p).is_zero() {
        return Err(ModuleError::NotFiniteSlope("κ_λ·κ_λ′ = 0".into()));
    }

    let left_roots = HeckeRoots::new(lambda.to_vec(), q.clone());
    let double_prime = HeckeRoots::new(lambda_prime[..n - 2].to_vec(), q.clone());
    let modified = project0(&project0(m, &left_roots, &module.left)?, &double_prime, &module.right)?;
    if is_zero_vec(&modified) {
        return Err(ModuleError::Degenerate("the modified vector vanishes".into()));
    }
    let eigen = &kappa_l * &kappa_p;
    let eigenvalue_ok = module.u_p().apply(&modified) == scale_vec(&modified, &eigen);

    let dual = module.contragredient()?;
    let mut full = lambda.to_vec();
    full.push(lambda_n.clone());
    let lambda_dual: Vec<Cyclo> = (2..=n).rev().map(|i| HeckeRoots::dual_root(&full[i - 1], n, &q)).collect();
    let lambda_prime_dual: Vec<Cyclo> =
        (1..n).rev().map(|i| HeckeRoots::dual_root(&lambda_prime[i - 1], n - 1, &q)).collect();
    let dual_left = HeckeRoots::new(lambda_dual.clone(), q.clone());
    let dual_right = HeckeRoots::new(lambda_prime_dual[..n - 2].to_vec(), q.clone());
    let dual_modified = project0(&project0(m, &dual_left, &dual.left)?, &dual_right, &dual.right)?;

    let kappa_dual = kappa(&lambda_dual, n, &q);
    let kappa_prime_dual = kappa(&lambda_prime_dual, n, &q);
    let dual_eigen = &kappa_dual * &kappa_prime_dual;
    let dual_eigenvalue_ok = dual.u_p().apply(&modified) == scale_vec(&modified, &dual_eigen);

    let constant = proportionality(&dual_modified, &modified).ok_or_else(|| ModuleError::NotProportional {
        left: format!("{modified:?}"),
        right: format!("{dual_modified:?}"),
    })?;
    let ok = !constant.is_zero() && eigenvalue_ok && dual_eigenvalue_ok;
    Ok(DualProjectionReport {
        n,
        lambda_n,
        lambda_dual,
        lambda_prime_dual,
        kappa: kappa_l,
        kappa_prime: kappa_p,
        kappa_dual,
        kappa_prime_dual,
        eigenvalue_ok,
        dual_eigenvalue_ok,
        modified,
        dual_modified,
        constant,
        ok,
    })
}

/// Check `(ν−1)ν/2 + n(n−1)/2 − ν(n−1) = (n−ν−1)(n−ν)/2` for all `0 ≤ ν ≤ n ≤ n_max`.
pub fn verify_recisums(n_max: u32) -> bool {
    (0..=i64::from(n_max)).all(|n| {
        (0..=n).all(|nu| (nu - 1) * nu + n * (n - 1) - 2 * nu * (n - 1) == (n - nu - 1) * (n - nu))
    })
}
