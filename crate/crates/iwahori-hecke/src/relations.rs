//! Relations between the operators: the factorisation
//! `sum_nu (-1)^nu q^{nu(nu-1)/2} T_nu X^{n-nu} = prod_i (X - U_i)` and commutativity.

use exact_arith::par::Strategy;
use exact_arith::Rat;
use serde::Serialize;

use crate::operators::expand_operator;
use crate::{CosetSum, HeckeError, HeckeOperatorTag, Level};

fn q_pow(level: &Level, e: usize) -> Rat {
    num_traits::pow(level.q(), e)
}

/// Elementary symmetric functions `e_0, ..., e_n` of the given (commuting) sums.
pub fn elementary_symmetric(ops: &[CosetSum], level: &Level, strategy: Strategy) -> Result<Vec<CosetSum>, HeckeError> {
    // e(X) = prod (1 + U_i X), built up one factor at a time.
    let mut e = vec![CosetSum::unit(*level)];
    for u in ops {
        let mut next = Vec::with_capacity(e.len() + 1);
        for k in 0..=e.len() {
            let mut term = if k < e.len() { e[k].clone() } else { CosetSum::zero(*level) };
            if k > 0 {
                term = term.add(&e[k - 1].convolve_with(u, strategy)?)?;
            }
            next.push(term);
        }
        e = next;
    }
    Ok(e)
}

/// Per-coefficient data of the factorisation check.
#[derive(Debug, Clone, Serialize)]
pub struct GritsenkoCoefficient {
    pub nu: usize,
    /// Number of distinct cosets in `e_nu(U_1, ..., U_n)`.
    pub cosets: usize,
    /// Total multiplicity of `e_nu(U)` (equals `q^{nu(nu-1)/2}` times the size of `T_nu`).
    pub multiplicity: String,
    pub matches: bool,
    /// `U_1 ... U_nu = q^{nu(nu-1)/2} V_{p,nu}`.
    pub leading_product_matches: bool,
}

/// Result of [`verify_gritsenko`].
#[derive(Debug, Clone, Serialize)]
pub struct GritsenkoReport {
    pub level: Level,
    pub coefficients: Vec<GritsenkoCoefficient>,
    pub holds: bool,
}

/// Expand both sides of the Hecke polynomial factorisation and compare coefficientwise:
/// `e_nu(U_1, ..., U_n) = q^{nu(nu-1)/2} T_nu` for every `nu`.
pub fn verify_gritsenko(level: &Level) -> Result<GritsenkoReport, HeckeError> {
    verify_gritsenko_with(level, Strategy::default())
}

/// [`verify_gritsenko`] with an explicit execution strategy.
pub fn verify_gritsenko_with(level: &Level, strategy: Strategy) -> Result<GritsenkoReport, HeckeError> {
    let n = level.n;
    let us: Vec<CosetSum> = (1..=n)
        .map(|i| expand_operator(HeckeOperatorTag::U(i), level))
        .collect::<Result<_, _>>()?;
    let e = elementary_symmetric(&us, level, strategy)?;
    let mut coefficients = Vec::new();
    let mut prefix = CosetSum::unit(*level);
    for (nu, e_nu) in e.iter().enumerate() {
        let scale = q_pow(level, nu * nu.saturating_sub(1) / 2);
        let rhs = expand_operator(HeckeOperatorTag::T(nu), level)?.scale(&scale);
        if !e_nu.same_as(&rhs) {
            let (only_left, only_right) = e_nu.symmetric_difference(&rhs);
            return Err(HeckeError::Mismatch { what: "Hecke polynomial".into(), index: nu, only_left, only_right });
        }
        if nu > 0 {
            prefix = prefix.convolve_with(&us[nu - 1], strategy)?;
        }
        let v = expand_operator(HeckeOperatorTag::V(nu), level)?.scale(&scale);
        coefficients.push(GritsenkoCoefficient {
            nu,
            cosets: e_nu.len(),
            multiplicity: exact_arith::fmt_rat(&e_nu.total()),
            matches: true,
            leading_product_matches: prefix.same_as(&v),
        });
    }
    let holds = coefficients.iter().all(|c| c.matches && c.leading_product_matches);
    Ok(GritsenkoReport { level: *level, coefficients, holds })
}

/// One commutator check.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorResult {
    pub left: String,
    pub right: String,
    pub commute: bool,
    /// Terms of `ab - ba` with positive / negative coefficient (empty when commuting).
    pub only_ab: Vec<String>,
    pub only_ba: Vec<String>,
}

/// Result of [`verify_commutativity`].
#[derive(Debug, Clone, Serialize)]
pub struct CommutativityReport {
    pub level: Level,
    pub pairs: Vec<CommutatorResult>,
    /// All `V_{p,nu}` commute.
    pub v_commute: bool,
    /// All `U_i` commute.
    pub u_commute: bool,
}

impl CommutativityReport {
    pub fn commute(&self) -> bool {
        self.v_commute && self.u_commute
    }
}

fn commutators(tags: &[HeckeOperatorTag], level: &Level) -> Result<Vec<CommutatorResult>, HeckeError> {
    let ops: Vec<CosetSum> = tags.iter().map(|&t| expand_operator(t, level)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let ab = ops[a].convolve(&ops[b])?;
            let ba = ops[b].convolve(&ops[a])?;
            let (only_ab, only_ba) = ab.symmetric_difference(&ba);
            out.push(CommutatorResult {
                left: tags[a].to_string(),
                right: tags[b].to_string(),
                commute: only_ab.is_empty() && only_ba.is_empty(),
                only_ab,
                only_ba,
            });
        }
    }
    Ok(out)
}

/// Compare `U_i U_j` with `U_j U_i` and `V_{p,nu} V_{p,mu}` with `V_{p,mu} V_{p,nu}` for all
/// pairs. Non-commuting pairs are reported with the differing cosets.
pub fn verify_commutativity(level: &Level) -> Result<CommutativityReport, HeckeError> {
    let n = level.n;
    let u_tags: Vec<_> = (1..=n).map(HeckeOperatorTag::U).collect();
    let v_tags: Vec<_> = (0..=n).map(HeckeOperatorTag::V).collect();
    let u_pairs = commutators(&u_tags, level)?;
    let v_pairs = commutators(&v_tags, level)?;
    let u_commute = u_pairs.iter().all(|c| c.commute);
    let v_commute = v_pairs.iter().all(|c| c.commute);
    let pairs = v_pairs.into_iter().chain(u_pairs).collect();
    Ok(CommutativityReport { level: *level, pairs, v_commute, u_commute })
}
