//! The contragredient identity for `h^(f)`:
//!
//! `j(w_{n-1} d n') (d_(x) h^(f))^{-t} w_n n = j(f^n 1_{n-1}) f^{1-n} d_((-1)^{n-1} x^{-1}) h^(f)`
//!
//! with `d = diag(-x, -1, ..., -1, (-1)^n x^{-1})`, `n' = d_(x)^{-1} U d_(x)` (where
//! `U_{ij} = f^{j-i}`, `j >= i`) and `n` the lower bidiagonal matrix of [`n_mat`].

use std::collections::HashMap;

use exact_arith::{LaurentMatrix, LaurentPoly, Rat};
use serde::Serialize;

use crate::iwahori::iwahori_member;
use crate::standard::{d_fe, d_x, h_f, iota, j, n_mat, n_prime, t_f, weyl};
use crate::{GlnContext, GlnError};

/// The value of `x`: a free Laurent variable or a rational p-adic unit.
#[derive(Debug, Clone, PartialEq)]
pub enum XValue {
    Symbolic,
    Unit(Rat),
}

/// Outcome of [`verify_inverseh`].
#[derive(Debug, Clone, Serialize)]
pub struct InversehReport {
    pub n: usize,
    pub symbolic: bool,
    pub identity_holds: bool,
    pub det_jd_nprime_is_one: bool,
    /// `w_{n-1} d n' w_{n-1} in I_{n-1}^(r)`; only decided for numeric contexts.
    pub wdnw_in_iwahori: Option<bool>,
    /// `n in I_n^(r)`; only decided for numeric contexts.
    pub n_in_iwahori: Option<bool>,
}

impl InversehReport {
    /// Identity and every decided side condition hold.
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.det_jd_nprime_is_one
            && self.wdnw_in_iwahori.unwrap_or(true)
            && self.n_in_iwahori.unwrap_or(true)
    }
}

/// Both sides of the identity.
pub fn inverseh_sides(n: usize, f: &LaurentPoly, x: &LaurentPoly) -> Result<(LaurentMatrix, LaurentMatrix), GlnError> {
    let m = n - 1;
    let d = d_fe(n, x)?;
    let np = n_prime(n, f, x)?;
    let hf = h_f(n, f);
    let lhs = j(&weyl(m).mul(&d).mul(&np))
        .mul(&d_x(n, x).mul(&hf).inverse()?.transpose())
        .mul(&weyl(n))
        .mul(&n_mat(n, f));
    let sign = LaurentPoly::from_int(if m % 2 == 0 { 1 } else { -1 });
    let scalar = LaurentMatrix::identity(m).scale(&f.pow(n as i64)?);
    let rhs = j(&scalar)
        .scale(&f.pow(1 - n as i64)?)
        .mul(&d_x(n, &(&sign * &x.inv_unit()?)))
        .mul(&hf);
    Ok((lhs, rhs))
}

/// Verify the identity and its side conditions. `n < 3` is rejected (the matrix `d`
/// degenerates for `n = 2`).
pub fn verify_inverseh(ctx: &GlnContext, x: &XValue) -> Result<InversehReport, GlnError> {
    let n = ctx.n;
    if n < 3 {
        return Err(GlnError::InvalidContext(format!("the inverse-h identity needs n >= 3, got n = {n}")));
    }
    let f = ctx.f_poly();
    let xp = match x {
        XValue::Symbolic => LaurentPoly::var("x"),
        XValue::Unit(v) => {
            if !exact_arith::padic::valuation_unchecked(v, ctx.p).finite().is_some_and(|k| k == 0) {
                return Err(GlnError::InvalidContext(format!("x = {v} is not a {}-adic unit", ctx.p)));
            }
            LaurentPoly::from_rat(v.clone())
        }
    };
    let (lhs, rhs) = inverseh_sides(n, &f, &xp)?;
    if lhs != rhs {
        return Err(GlnError::IdentityFailure { name: "inverse-h".into(), difference: lhs.sub(&rhs).to_strings() });
    }
    let d = d_fe(n, &xp)?;
    let np = n_prime(n, &f, &xp)?;
    let det_ok = j(&d).mul(&j(&np)).det() == LaurentPoly::one();
    let numeric = ctx.f_rat().is_some() && matches!(x, XValue::Unit(_));
    let (wdnw, nin) = if numeric {
        let empty = HashMap::new();
        let wm = weyl(n - 1);
        let wdnw = wm.mul(&d).mul(&np).mul(&wm).eval_rat(&empty)?;
        let nm = n_mat(n, &f).eval_rat(&empty)?;
        (Some(iwahori_member(&wdnw, ctx.p, ctx.r)), Some(iwahori_member(&nm, ctx.p, ctx.r)))
    } else {
        (None, None)
    };
    Ok(InversehReport {
        n,
        symbolic: !numeric,
        identity_holds: true,
        det_jd_nprime_is_one: det_ok,
        wdnw_in_iwahori: wdnw,
        n_in_iwahori: nin,
    })
}

/// `iota(t_(f) f) f^n = t_(f) f` with `t_(f)` of size `n - 1`, checked symbolically in `f`.
pub fn verify_inverseft(n: usize) -> Result<(), GlnError> {
    if n < 2 {
        return Err(GlnError::InvalidContext("n must be at least 2".into()));
    }
    let f = LaurentPoly::var("f");
    let t = t_f(n - 1, &f).scale(&f);
    let lhs = iota(&t)?.scale(&f.pow(n as i64)?);
    if lhs != t {
        return Err(GlnError::IdentityFailure { name: "inverse-t_(f)".into(), difference: lhs.sub(&t).to_strings() });
    }
    Ok(())
}

/// Whether the same identity holds with an `n x n` matrix `t_(f)` (it does not for `n >= 2`).
pub fn inverseft_full_size_holds(n: usize) -> Result<bool, GlnError> {
    let f = LaurentPoly::var("f");
    let t = t_f(n, &f).scale(&f);
    Ok(iota(&t)?.scale(&f.pow(n as i64)?) == t)
}
