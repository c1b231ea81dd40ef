//! The modification operator `Π⁰_λ` and the normalised projection `Π_λ`.

use exact_arith::Cyclo;

use crate::matrix::{is_zero_vec, CycloMatrix, Vector};
use crate::module::{q_pow, HeckeModule};
use crate::roots::HeckeRoots;
use crate::ModuleError;

fn check_count(module: &HeckeModule, roots: &HeckeRoots) -> Result<(), ModuleError> {
    if roots.count() > module.n() {
        return Err(ModuleError::InvalidParameters(format!(
            "{} roots projected onto, but the module is for GL_{}",
            roots.count(),
            module.n()
        )));
    }
    Ok(())
}

/// Pairs `(i, j)` (1-based) with `1 ≤ i ≤ count`, `1 ≤ j ≤ n`, `j ≠ i`.
fn index_pairs(count: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=count).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// The operator `Π⁰_λ = ∏_{i ≤ count} ∏_{j ≠ i} (λ_i q^{1−j} V_{p,j−1} − V_{p,j})`.
pub fn project0_operator(module: &HeckeModule, roots: &HeckeRoots) -> Result<CycloMatrix, ModuleError> {
    check_count(module, roots)?;
    let q = module.q();
    Ok(index_pairs(roots.count(), module.n()).fold(CycloMatrix::identity(module.dim()), |acc, (i, j)| {
        let c = &roots.lambda()[i - 1] * &q_pow(q, 1 - j as i64);
        acc.mul(&module.v(j - 1).scale(&c).sub(module.v(j)))
    }))
}

/// The denominator `λ_i q^{1−j} η_{j−1} − η_j`.
pub fn denominator(roots: &HeckeRoots, i: usize, j: usize) -> Result<Cyclo, ModuleError> {
    let have = roots.lambda().len();
    let eta_prev = roots.eta(j - 1).ok_or(ModuleError::MissingRoots { needed: j - 1, have })?;
    let eta = roots.eta(j).ok_or(ModuleError::MissingRoots { needed: j, have })?;
    Ok(&(&(&roots.lambda()[i - 1] * &q_pow(roots.q(), 1 - j as i64)) * &eta_prev) - &eta)
}

/// The scalar by which `Π⁰_λ` acts on `M_λ`: the product of all denominators.
pub fn projection_scalar(roots: &HeckeRoots, n: usize) -> Result<Cyclo, ModuleError> {
    index_pairs(roots.count(), n).map(|(i, j)| denominator(roots, i, j)).product()
}

/// The normalised projection `Π_λ = Π⁰_λ / ∏ (λ_i q^{1−j} η_{j−1} − η_j)`.
///
/// On a joint eigenvector the `(i, j)` factor of `Π⁰_λ` acts by
/// `q^{1−j} v_{j−1} (λ_i − u_j)`, where `u_j` is its `U_j`-eigenvalue and `v_ν` its
/// `V_{p,ν}`-eigenvalue, while the denominator is `q^{1−j} η_{j−1} (λ_i − λ_j)`.
/// Hence `Π_λ` is the identity on `M_λ` when `count ≥ n − 1` (and `V_{p,n}`
/// acts by `η_n`), but for `count < n − 1` the factors with `j > count + 1`
/// need not cancel and `Π_λ` is in general not idempotent.
pub fn project_operator(module: &HeckeModule, roots: &HeckeRoots) -> Result<CycloMatrix, ModuleError> {
    check_count(module, roots)?;
    let mut total = Cyclo::one();
    for (i, j) in index_pairs(roots.count(), module.n()) {
        let d = denominator(roots, i, j)?;
        if d.is_zero() {
            return Err(ModuleError::VanishingDenominator { i, j });
        }
        total = &total * &d;
    }
    roots.check_distinct_nonzero()?;
    let inv = total.inv().map_err(|_| ModuleError::VanishingDenominator { i: 0, j: 0 })?;
    Ok(project0_operator(module, roots)?.scale(&inv))
}

fn check_roots(module: &HeckeModule, m: &[Cyclo], roots: &HeckeRoots) -> Result<(), ModuleError> {
    if m.len() != module.dim() {
        return Err(ModuleError::DimensionMismatch { expected: module.dim(), got: m.len() });
    }
    for (k, l) in roots.projected().iter().enumerate() {
        if !is_zero_vec(&module.apply_h(m, l)) {
            return Err(ModuleError::RootNotSatisfied { index: k + 1, root: l.to_string() });
        }
    }
    Ok(())
}

/// `Π⁰_λ(m)` for `m ∈ M^λ` (checked: `H_p(λ_i)·m = 0` for every projected root).
pub fn project0(m: &[Cyclo], roots: &HeckeRoots, module: &HeckeModule) -> Result<Vector, ModuleError> {
    check_count(module, roots)?;
    check_roots(module, m, roots)?;
    Ok(project0_operator(module, roots)?.apply(m))
}

/// `Π_λ(m)` for `m ∈ M^λ`; requires distinct non-zero roots, enough roots to
/// define `η_1, …, η_n`, and non-vanishing denominators.
pub fn project(m: &[Cyclo], roots: &HeckeRoots, module: &HeckeModule) -> Result<Vector, ModuleError> {
    let op = project_operator(module, roots)?;
    check_roots(module, m, roots)?;
    Ok(op.apply(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::basis_vector;
    use exact_arith::int;

    fn c(x: i64) -> Cyclo {
        Cyclo::from_int(x)
    }

    /// All permutations of `xs`.
    fn perms(xs: &[i64]) -> Vec<Vec<i64>> {
        if xs.len() <= 1 {
            return vec![xs.to_vec()];
        }
        let mut out = Vec::new();
        for k in 0..xs.len() {
            let mut rest = xs.to_vec();
            let x = rest.remove(k);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    fn perm_module(n: usize, lambda: &[i64]) -> HeckeModule {
        let spectra: Vec<Vec<Cyclo>> = perms(lambda).into_iter().map(|p| p.into_iter().map(c).collect()).collect();
        HeckeModule::from_spectra(n, int(2), &spectra).unwrap()
    }

    #[test]
    fn rank_one_kills_other_component_gl2() {
        // joint spectra (3,5) and (5,3); project onto λ_1 = 3
        let module = perm_module(2, &[3, 5]);
        let roots = HeckeRoots::new(vec![c(3)], int(2));
        let m = vec![c(1), c(1)];
        let out = project0(&m, &roots, &module).unwrap();
        assert!(!out[0].is_zero());
        assert!(out[1].is_zero());
        // (λ_1 q^{-1} V_1 − V_2) on e_1: 3/2·3 − 15/2 = −3
        assert_eq!(out[0], c(-3));
    }

    #[test]
    fn coordinate_projection_gl3() {
        let module = perm_module(3, &[2, 3, 5]);
        let roots = HeckeRoots::new(vec![c(2), c(3), c(5)], int(2));
        let op = project_operator(&module, &roots).unwrap();
        let mut expected = crate::matrix::CycloMatrix::zeros(6);
        expected = expected.add(&CycloMatrix::diag((0..6).map(|k| if k == 0 { c(1) } else { c(0) }).collect()));
        assert_eq!(op, expected);
    }

    #[test]
    fn scalar_on_eigenspace() {
        let module = perm_module(3, &[2, 3, 5]);
        let roots = HeckeRoots::new(vec![c(2), c(3), c(5)], int(2)).projecting(2);
        let e = basis_vector(6, 0);
        let out = project0(&e, &roots, &module).unwrap();
        let s = projection_scalar(&roots, 3).unwrap();
        assert_eq!(out, crate::matrix::scale_vec(&e, &s));
    }

    #[test]
    fn precondition_and_denominator_errors() {
        let module = perm_module(2, &[3, 5]);
        let roots = HeckeRoots::new(vec![c(7)], int(2));
        assert!(matches!(project0(&[c(1), c(0)], &roots, &module), Err(ModuleError::RootNotSatisfied { index: 1, .. })));
        let short = HeckeRoots::new(vec![c(3)], int(2));
        assert_eq!(project(&[c(1), c(0)], &short, &module), Err(ModuleError::MissingRoots { needed: 2, have: 1 }));
        // the (i, j) denominator is q^{1-j} η_{j-1} (λ_i − λ_j)
        let rep = HeckeRoots::new(vec![c(3), c(3)], int(2));
        assert_eq!(project(&[c(1), c(0)], &rep, &module), Err(ModuleError::VanishingDenominator { i: 1, j: 2 }));
        assert_eq!(project0(&[c(0), c(0)], &short, &module).unwrap(), vec![c(0), c(0)]);
    }
}
