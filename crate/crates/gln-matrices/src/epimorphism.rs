//! The matrices `k_{u,w}`, `k'_{u,w}` linking `h^(f)` to `h^(f varpi)` and the
//! epimorphism `(u, w) -> det k_{u,w}` onto `(1 + f)/(1 + f p)`.
//!
//! Given superdiagonal data `u = (u_12, ..., u_{n-1,n})` and `w = (w_12, ..., w_{n-2,n-1})`
//! the family consists of
//!
//! * `h(u,w) = t_(f) j(w) t_(f)^{-1} h^(1) t_(f) u^{-1} t_(f)^{-1}`,
//! * the lower unipotent `u^-`, `w^-` and the diagonal `d(u,w)`, `d'(u,w)` that bring
//!   `u^- h(u,w) w^-` back to `h^(1)` modulo `f p` (with the correction matrix `n`),
//! * exact lifts `k_{u,w} in I_n`, `k'_{u,w} in I_{n-1}` with
//!   `t_(varpi)^{-1} j(w) h^(f) u^{-1} t_(varpi) = j(k') h^(f varpi) k^{-1}`.
//!
//! The exact lifts are obtained from an LU factorisation: with
//! `A_w = t_(f) w t_(f)^{-1}`, `L_u = w_{n-1} [t_(f) u^{-1} t_(f)^{-1}]_{n-1} w_{n-1}` and
//! `A_w L_u = L U` (unit lower times upper), put `X = Delta L^{-1}` where the diagonal
//! `Delta` normalises `X h(u,w)_{.,n}` to the all-ones vector. Then
//! `k'^{-1} = t_(f varpi)^{-1} X t_(f varpi)` and `k^{-1} = h^(f varpi)^{-1} j(k'^{-1}) L_{u,w}`
//! is lower triangular after conjugation, hence Iwahori; moreover `X = d'(u,w) u^-`
//! modulo `f p`, so the lifts reduce to the matrices of the mod-`f p` construction.

use std::collections::BTreeMap;

use exact_arith::padic::valuation_unchecked;
use exact_arith::par::{self, Strategy};
use exact_arith::{fmt_rat, int, LaurentMatrix, LaurentPoly, Rat, RatMatrix, Var};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::iwahori::{iwahori_member, rat_mod_p};
use crate::standard::{h1, j, t_f};
use crate::{GlnContext, GlnError, NamedMatrix};

fn diag_powers(n: usize, x: &Rat) -> RatMatrix {
    let mut entries = Vec::with_capacity(n);
    let mut acc = Rat::one();
    for _ in 0..n {
        entries.push(acc.clone());
        acc *= x;
    }
    entries.reverse();
    RatMatrix::diag(&entries)
}

fn weyl_rat(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |a, b| if a + b + 1 == n { Rat::one() } else { Rat::zero() })
}

fn h1_rat(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |a, b| {
        if b == n - 1 || (a < n - 1 && a + b + 2 == n) {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

fn j_rat(g: &RatMatrix) -> RatMatrix {
    let m = g.rows();
    RatMatrix::from_fn(m + 1, m + 1, |a, b| {
        if a < m && b < m {
            g[(a, b)].clone()
        } else if a == m && b == m {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

fn upper_unipotent(n: usize, superdiag: &[Rat]) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    for (i, x) in superdiag.iter().enumerate() {
        m[(i, i + 1)] = x.clone();
    }
    m
}

fn conj(t: &RatMatrix, x: &RatMatrix) -> RatMatrix {
    // t x t^{-1}
    t.mul(x).mul(&t.inverse().expect("diagonal power matrix is invertible"))
}

fn lu_no_pivot(a: &RatMatrix) -> Result<(RatMatrix, RatMatrix), GlnError> {
    let n = a.rows();
    let mut l = RatMatrix::identity(n);
    let mut u = a.clone();
    for k in 0..n {
        if u[(k, k)].is_zero() {
            return Err(GlnError::InvalidContext("LU factorisation met a zero pivot".into()));
        }
        for i in k + 1..n {
            let c = &u[(i, k)] / &u[(k, k)];
            if c.is_zero() {
                continue;
            }
            for col in 0..n {
                let delta = &c * &u[(k, col)];
                u[(i, col)] -= delta;
            }
            l[(i, k)] = c;
        }
    }
    Ok((l, u))
}

/// Every entry of `a - b` has valuation at least `k`.
fn congruent(a: &RatMatrix, b: &RatMatrix, p: u64, k: i64) -> bool {
    a.sub(b).min_valuation(p).at_least(k)
}

/// The numeric matrices attached to one pair `(u, w)`.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionFamily {
    pub u: Vec<String>,
    pub w: Vec<String>,
    /// `h(u,w)` (exact).
    pub h_uw: RatMatrix,
    /// Lower unipotent `u^-` in `GL_{n-1}`.
    pub u_minus: RatMatrix,
    /// Lower unipotent `w^-` in `GL_{n-1}`.
    pub w_minus: RatMatrix,
    /// `d(u,w) = diag(c_{n-1}, ..., c_1)` in `GL_{n-1}`.
    pub d: RatMatrix,
    /// `d'(u,w) = diag(c_1^{-1}, ..., c_{n-1}^{-1})` in `GL_{n-1}` (exact inverse entries).
    pub d_prime: RatMatrix,
    /// Exact correction `n` with `j(d') u^- h(u,w) w^- j(d) n = h^(1)`.
    pub n_corr: RatMatrix,
    /// `X = Delta L^{-1}`, the exact lift of `d'(u,w) u^-`.
    pub x_lift: RatMatrix,
    /// `k_{u,w} in I_n` (statement orientation).
    pub k: RatMatrix,
    /// `k'_{u,w} in I_{n-1}` (statement orientation).
    pub k_prime: RatMatrix,
    /// `t_(varpi)^{-1} j(w) h^(f) u^{-1} t_(varpi)`.
    pub lhs: RatMatrix,
    /// `k'` built literally from the proof display, `t_(f varpi)^{-1} d' u^- t_(f varpi)`.
    pub k_prime_display: RatMatrix,
    /// `k` built literally from the proof display with the correction matrix `n`.
    pub k_display: RatMatrix,
}

impl DistributionFamily {
    /// The family as named matrices.
    pub fn named(&self) -> Vec<NamedMatrix> {
        let wrap = |tag: &str, m: &RatMatrix| NamedMatrix {
            tag: tag.to_string(),
            value: LaurentMatrix::from_rat_matrix(m),
        };
        vec![
            wrap("h(u,w)", &self.h_uw),
            wrap("u^-", &self.u_minus),
            wrap("w^-", &self.w_minus),
            wrap("d(u,w)", &self.d),
            wrap("d'(u,w)", &self.d_prime),
            wrap("n", &self.n_corr),
            wrap("k_{u,w}", &self.k),
            wrap("k'_{u,w}", &self.k_prime),
        ]
    }
}

/// The last-column entries `c_1, ..., c_{n-1}` of `u^- h(u,w) w^-` modulo `f^2`.
fn column_entries(n: usize, f: &Rat, u: &[Rat], w: &[Rat]) -> Vec<Rat> {
    let uu = |i: usize| u[i - 1].clone(); // u_{i,i+1}
    let ww = |i: usize| if i <= n - 2 { w[i - 1].clone() } else { Rat::zero() };
    let mut c = Vec::with_capacity(n - 1);
    c.push(Rat::one() + f * ww(1) - f * uu(n - 1));
    for i in 2..n {
        c.push(Rat::one() + f * ww(i) + f * uu(n - i));
    }
    c
}

/// Build the numeric family for superdiagonal data `u` (length `n-1`) and `w` (length `n-2`).
pub fn build_distribution_family(ctx: &GlnContext, u: &[Rat], w: &[Rat]) -> Result<DistributionFamily, GlnError> {
    let n = ctx.n;
    let f = ctx
        .f_rat()
        .ok_or_else(|| GlnError::InvalidContext("numeric context required".into()))?;
    if u.len() != n - 1 || w.len() != n - 2 {
        return Err(GlnError::InvalidContext(format!(
            "expected {} u-entries and {} w-entries, got {} and {}",
            n - 1,
            n - 2,
            u.len(),
            w.len()
        )));
    }
    let p = ctx.p;
    if let Some(bad) = u.iter().chain(w).find(|x| !valuation_unchecked(x, p).at_least(0)) {
        return Err(GlnError::InvalidContext(format!("{bad} is not p-integral")));
    }
    let varpi = int(p as i64);
    let fv = &f * &varpi;
    let m = n - 1;

    let uu = upper_unipotent(n, u);
    let uinv = uu.inverse()?;
    let ww = upper_unipotent(m, w);
    let tf = diag_powers(n, &f);
    let tf1 = diag_powers(m, &f);
    let tfv = diag_powers(n, &fv);
    let tfv1 = diag_powers(m, &fv);
    let tv = diag_powers(n, &varpi);
    let h1n = h1_rat(n);

    let tf_uinv = conj(&tf, &uinv);
    let h_uw = conj(&tf, &j_rat(&ww)).mul(&h1n).mul(&tf_uinv);
    let h_f = tf.inverse()?.mul(&h1n).mul(&tf);
    let lhs = tv.inverse()?.mul(&j_rat(&ww)).mul(&h_f).mul(&uinv).mul(&tv);
    let h_fv = tfv.inverse()?.mul(&h1n).mul(&tfv);

    // The displayed u, w matrices with the corrected last column.
    let mut u_minus = RatMatrix::identity(m);
    let mut w_minus = RatMatrix::identity(m);
    for i in 1..m {
        u_minus[(i, i - 1)] = &f * &u[n - 2 - i];
        w_minus[(i, i - 1)] = -(&f * &w[n - 2 - i]);
    }
    let c = column_entries(n, &f, u, w);
    let d = RatMatrix::diag(&c.iter().rev().cloned().collect::<Vec<_>>());
    let d_prime = RatMatrix::diag(&c.iter().map(|x| x.recip()).collect::<Vec<_>>());
    let m_full = j_rat(&d_prime).mul(&j_rat(&u_minus)).mul(&h_uw).mul(&j_rat(&w_minus)).mul(&j_rat(&d));
    let n_corr = m_full.inverse()?.mul(&h1n);

    // Exact lift via LU.
    let a_w = conj(&tf1, &ww);
    let b_u = RatMatrix::from_fn(m, m, |a, b| tf_uinv[(a, b)].clone());
    let wm = weyl_rat(m);
    let l_u = wm.mul(&b_u).mul(&wm);
    let (lo, _) = lu_no_pivot(&a_w.mul(&l_u))?;
    let lo_inv = lo.inverse()?;
    let h_col = RatMatrix::from_fn(m, 1, |a, _| h_uw[(a, n - 1)].clone());
    let v = lo_inv.mul(&h_col);
    let mut delta = Vec::with_capacity(m);
    for a in 0..m {
        if v[(a, 0)].is_zero() {
            return Err(GlnError::InvalidContext("degenerate normalisation in the LU lift".into()));
        }
        delta.push(v[(a, 0)].recip());
    }
    let x_lift = RatMatrix::diag(&delta).mul(&lo_inv);
    let k_prime_proof = tfv1.inverse()?.mul(&x_lift).mul(&tfv1);
    let k_proof = h_fv.inverse()?.mul(&j_rat(&k_prime_proof)).mul(&lhs);
    let k_prime = k_prime_proof.inverse()?;
    let k = k_proof.inverse()?;

    let k_prime_display = tfv1.inverse()?.mul(&d_prime).mul(&u_minus).mul(&tfv1);
    let k_display = tfv
        .inverse()?
        .mul(&j_rat(&w_minus.mul(&d)))
        .mul(&n_corr)
        .mul(&tfv)
        .inverse()?;

    Ok(DistributionFamily {
        u: u.iter().map(fmt_rat).collect(),
        w: w.iter().map(fmt_rat).collect(),
        h_uw,
        u_minus,
        w_minus,
        d,
        d_prime,
        n_corr,
        x_lift,
        k,
        k_prime,
        lhs,
        k_prime_display,
        k_display,
    })
}

/// Outcome of checking one family: `Ok(class)` with the class of `det k` in
/// `(1+f)/(1+fp) = Z/p`, or the name of the first failed property.
fn check_family(ctx: &GlnContext, fam: &DistributionFamily) -> Result<u64, String> {
    let (n, p, r) = (ctx.n, ctx.p, ctx.r);
    let nu = ctx.f_exponent().expect("numeric context") as i64;
    let f = ctx.f_rat().expect("numeric context");
    let fv = &f * &int(p as i64);
    if (fam.d.det() * fam.d_prime.det()) != Rat::one() {
        return Err("det d * det d' != 1".into());
    }
    let tfv = diag_powers(n, &fv);
    if fam.h_uw != tfv.mul(&fam.lhs).mul(&tfv.inverse().expect("invertible")) {
        return Err("h(u,w) is not the t_(f varpi)-conjugate of the left-hand side".into());
    }
    if !congruent(&fam.n_corr, &RatMatrix::identity(n), p, nu + 1) {
        return Err("correction n is not 1 mod f p".into());
    }
    if !congruent(&fam.x_lift, &fam.d_prime.mul(&fam.u_minus), p, nu + 1) {
        return Err("exact lift X is not d' u^- mod f p".into());
    }
    let h_fv = diag_powers(n, &fv)
        .inverse()
        .expect("invertible")
        .mul(&h1_rat(n))
        .mul(&diag_powers(n, &fv));
    let rhs = j_rat(&fam.k_prime).mul(&h_fv).mul(&fam.k.inverse().expect("invertible"));
    if rhs != fam.lhs {
        return Err("t_(varpi)^{-1} j(w) h^(f) u^{-1} t_(varpi) != j(k') h^(f varpi) k^{-1}".into());
    }
    if !iwahori_member(&fam.k, p, r) {
        return Err("k_{u,w} is not in I_n".into());
    }
    if !iwahori_member(&fam.k_prime, p, r) {
        return Err("k'_{u,w} is not in I_{n-1}".into());
    }
    if !iwahori_member(&fam.k_prime_display, p, r) {
        return Err("display k' is not in I_{n-1}".into());
    }
    let (dk, dk1) = (fam.k.det(), fam.k_prime.det());
    if dk != dk1 {
        return Err("det k != det k'".into());
    }
    let shifted = &dk - Rat::one();
    if !valuation_unchecked(&shifted, p).at_least(nu) {
        return Err("det k is not in 1 + f".into());
    }
    rat_mod_p(&(shifted / &f), p).ok_or_else(|| "class of det k undefined".to_string())
}

/// Summary of the exhaustive epimorphism check.
#[derive(Debug, Clone, Serialize)]
pub struct EpimorphismReport {
    pub n: usize,
    pub p: u64,
    pub r: u32,
    pub f_exponent: u32,
    /// Order of `(1+f)/(1+f p)`, i.e. `p`.
    pub group_order: u64,
    pub pairs_checked: usize,
    /// For each attained class `a` (meaning `1 + a f`) one preimage `(u, w)`.
    pub witnesses: BTreeMap<u64, (Vec<String>, Vec<String>)>,
    pub surjective: bool,
    /// The class equals `u_12 + ... + u_{n-2,n-1} - u_{n-1,n} + sum(w) mod p` for every pair,
    /// i.e. `sum_i (c_i - 1)/f`, so the map is a homomorphism.
    pub linear_formula_holds: bool,
    /// Number of pairs for which the literal proof display for `k` is not Iwahori.
    pub display_k_not_iwahori: usize,
}

/// Enumerate all superdiagonals mod `p` and verify the epimorphism for each pair.
pub fn verify_epimorphism(ctx: &GlnContext) -> Result<EpimorphismReport, GlnError> {
    verify_epimorphism_with(ctx, Strategy::default())
}

/// [`verify_epimorphism`] with an explicit execution strategy.
pub fn verify_epimorphism_with(ctx: &GlnContext, strategy: Strategy) -> Result<EpimorphismReport, GlnError> {
    let n = ctx.n;
    let p = ctx.p;
    let nu = ctx
        .f_exponent()
        .ok_or_else(|| GlnError::InvalidContext("numeric context required".into()))?;
    let slots = 2 * n - 3;
    let total = (p as usize).pow(slots as u32);
    let decode = |mut idx: usize| -> (Vec<Rat>, Vec<Rat>) {
        let mut digits = Vec::with_capacity(slots);
        for _ in 0..slots {
            digits.push(int((idx % p as usize) as i64));
            idx /= p as usize;
        }
        let w = digits.split_off(n - 1);
        (digits, w)
    };
    let results = par::map_range(strategy, 0..total, |idx| {
        let (u, w) = decode(idx);
        let fam = build_distribution_family(ctx, &u, &w);
        let outcome = fam.as_ref().map_err(|e| e.to_string()).and_then(|fam| check_family(ctx, fam));
        let display_ok = fam.as_ref().map(|f| iwahori_member(&f.k_display, p, ctx.r)).unwrap_or(false);
        (u, w, outcome, display_ok)
    });
    let mut witnesses = BTreeMap::new();
    let mut linear = true;
    let mut display_bad = 0;
    for (u, w, outcome, display_ok) in results {
        let class = outcome.map_err(|reason| GlnError::Counterexample {
            u: u.iter().map(fmt_rat).collect(),
            w: w.iter().map(fmt_rat).collect(),
            reason,
        })?;
        let expected = u[..n - 2].iter().sum::<Rat>() - &u[n - 2] + w.iter().sum::<Rat>();
        linear &= rat_mod_p(&expected, p) == Some(class);
        if !display_ok {
            display_bad += 1;
        }
        witnesses
            .entry(class)
            .or_insert_with(|| (u.iter().map(fmt_rat).collect(), w.iter().map(fmt_rat).collect()));
    }
    Ok(EpimorphismReport {
        n,
        p,
        r: ctx.r,
        f_exponent: nu,
        group_order: p,
        pairs_checked: total,
        surjective: witnesses.len() as u64 == p,
        witnesses,
        linear_formula_holds: linear,
        display_k_not_iwahori: display_bad,
    })
}

/// Symbolic check (variables `f`, `u_{i,i+1}`, `w_{i,i+1}`) of the column structure:
/// modulo `f^2` the first `n-1` columns of `u^- h(u,w) w^-` are those of `h^(1)` and the
/// last column is `(c_1, ..., c_{n-1}, 1)`; also `det d * det d' = 1` modulo `f^2` for the
/// truncated `d' = diag(2 - c_1, ..., 2 - c_{n-1})` of the display.
pub fn symbolic_family_check(n: usize) -> Result<(), GlnError> {
    if n < 2 {
        return Err(GlnError::InvalidContext("n must be at least 2".into()));
    }
    let f = LaurentPoly::var("f");
    let fvar = Var::new("f");
    let uv: Vec<LaurentPoly> = (1..n).map(|i| LaurentPoly::var(&format!("u{}{}", i, i + 1))).collect();
    let wv: Vec<LaurentPoly> = (1..n - 1).map(|i| LaurentPoly::var(&format!("w{}{}", i, i + 1))).collect();
    let m = n - 1;
    let unip = |size: usize, sd: &[LaurentPoly]| {
        let mut a = LaurentMatrix::identity(size);
        for (i, x) in sd.iter().enumerate() {
            a.set(i, i + 1, x.clone());
        }
        a
    };
    let uu = unip(n, &uv);
    let ww = unip(m, &wv);
    let tf = t_f(n, &f);
    let tfi = tf.inverse()?;
    let h_uw = tf.mul(&j(&ww)).mul(&tfi).mul(&h1(n)).mul(&tf).mul(&uu.inverse()?).mul(&tfi);
    let mut u_minus = LaurentMatrix::identity(m);
    let mut w_minus = LaurentMatrix::identity(m);
    for i in 1..m {
        u_minus.set(i, i - 1, &f * &uv[n - 2 - i]);
        w_minus.set(i, i - 1, -&(&f * &wv[n - 2 - i]));
    }
    let prod = j(&u_minus).mul(&h_uw).mul(&j(&w_minus)).truncate(fvar, 2);
    let one = LaurentPoly::one();
    let wsym = |i: usize| if i <= n - 2 { wv[i - 1].clone() } else { LaurentPoly::zero() };
    let mut c = vec![&(&one + &(&f * &wsym(1))) - &(&f * &uv[n - 2])];
    for i in 2..n {
        c.push(&(&one + &(&f * &wsym(i))) + &(&f * &uv[n - i - 1]));
    }
    let mut expected = h1(n);
    for (i, ci) in c.iter().enumerate() {
        expected.set(i, n - 1, ci.clone());
    }
    if prod != expected {
        return Err(GlnError::IdentityFailure {
            name: "u^- h(u,w) w^- column structure mod f^2".into(),
            difference: prod.sub(&expected).to_strings(),
        });
    }
    let d = LaurentMatrix::diag(c.iter().rev().cloned().collect());
    let two = LaurentPoly::from_int(2);
    let d_prime = LaurentMatrix::diag(c.iter().map(|x| &two - x).collect());
    let det = (&d.det() * &d_prime.det()).truncate(fvar, 2);
    if det != one {
        return Err(GlnError::IdentityFailure {
            name: "det d * det d' mod f^2".into(),
            difference: vec![vec![(&det - &one).to_string()]],
        });
    }
    // Zero parameters: h(0,0) = h^(1).
    let zero_u = vec![LaurentPoly::zero(); n - 1];
    let zero_w = vec![LaurentPoly::zero(); n - 2];
    let h00 = tf.mul(&j(&unip(m, &zero_w))).mul(&tfi).mul(&h1(n)).mul(&tf).mul(&unip(n, &zero_u)).mul(&tfi);
    if h00 != h1(n) {
        return Err(GlnError::IdentityFailure { name: "h(0,0) = h^(1)".into(), difference: h00.sub(&h1(n)).to_strings() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_sample_n3_p3() {
        let ctx = GlnContext::numeric(3, 3, 1, 1).unwrap();
        let fam = build_distribution_family(&ctx, &[int(1), int(0)], &[int(1)]).unwrap();
        assert_eq!(check_family(&ctx, &fam).map(|_| ()), Ok(()));
        assert!(iwahori_member(&fam.k, 3, 1));
        assert!(iwahori_member(&fam.k_prime, 3, 1));
    }

    #[test]
    fn zero_parameters_give_trivial_class() {
        for (n, p) in [(2, 2), (3, 3)] {
            let ctx = GlnContext::numeric(n, p, 1, 1).unwrap();
            let fam = build_distribution_family(&ctx, &vec![int(0); n - 1], &vec![int(0); n - 2]).unwrap();
            assert_eq!(check_family(&ctx, &fam), Ok(0));
            assert_eq!(fam.h_uw, h1_rat(n));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = GlnContext::numeric(3, 3, 1, 1).unwrap();
        assert!(build_distribution_family(&ctx, &[int(1)], &[int(1)]).is_err());
        assert!(build_distribution_family(&ctx, &[exact_arith::rat(1, 3), int(0)], &[int(1)]).is_err());
        let sym = GlnContext::symbolic(3, 3, 1).unwrap();
        assert!(verify_epimorphism(&sym).is_err());
    }

    #[test]
    fn symbolic_structure() {
        for n in 2..=5 {
            symbolic_family_check(n).unwrap();
        }
    }
}
