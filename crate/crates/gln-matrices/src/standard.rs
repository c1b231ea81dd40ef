//! Builders for the named matrices. All constructions are exact Laurent matrices so
//! that identities can be checked symbolically; numeric instances come from
//! substituting `f = p^nu`, `varpi = p` (see [`GlnContext`]).

use exact_arith::{LaurentMatrix, LaurentPoly};
use serde::Serialize;

use crate::{GlnContext, GlnError};

/// A matrix together with the name of its defining construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMatrix {
    pub tag: String,
    pub value: LaurentMatrix,
}

impl Serialize for NamedMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NamedMatrix", 2)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("matrix", &self.value.to_strings())?;
        st.end()
    }
}

/// The standard constructions available through [`build_standard`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardTag {
    /// `t_(f) = diag(f^{n-1}, ..., f, 1)`.
    TF,
    /// `h^(1)`: the block `w_{n-1}` in the upper left corner and a last column of ones.
    H1,
    /// `h^(f) = t_(f)^{-1} h^(1) t_(f)`.
    HF,
    /// The longest Weyl element `w_n` (anti-diagonal ones).
    Wn,
    /// The embedding `j(g) = diag(g, 1)` of an `(n-1) x (n-1)` matrix.
    J(LaurentMatrix),
    /// `j_delta(g) = diag(g, varpi^delta)`.
    JDelta(LaurentMatrix, i64),
    /// `Delta_delta = diag(1, ..., 1, varpi^delta)`.
    DeltaDelta(i64),
    /// `d_(x) = diag(x, 1, ..., 1)`.
    Dx(LaurentPoly),
    /// The lower bidiagonal matrix `n` of the contragredient identity.
    NMat,
    /// `n' = d_(x)^{-1} (f^{j-i})_{i<=j} d_(x)` in `GL_{n-1}`.
    NPrime(LaurentPoly),
    /// `d = diag(-x, -1, ..., -1, (-1)^n x^{-1})` in `GL_{n-1}` (needs `n >= 3`).
    DFe(LaurentPoly),
    /// `w~ = j(w_{n-1}) w_n`.
    WTilde,
}

impl StandardTag {
    pub fn name(&self) -> &'static str {
        match self {
            StandardTag::TF => "t_(f)",
            StandardTag::H1 => "h^(1)",
            StandardTag::HF => "h^(f)",
            StandardTag::Wn => "w_n",
            StandardTag::J(_) => "j(g)",
            StandardTag::JDelta(..) => "j_delta(g)",
            StandardTag::DeltaDelta(_) => "Delta_delta",
            StandardTag::Dx(_) => "d_(x)",
            StandardTag::NMat => "n_mat",
            StandardTag::NPrime(_) => "n'_mat",
            StandardTag::DFe(_) => "d_fe",
            StandardTag::WTilde => "w_tilde",
        }
    }
}

/// Build a named matrix for the context's rank.
pub fn build_standard(ctx: &GlnContext, tag: StandardTag) -> Result<NamedMatrix, GlnError> {
    let n = ctx.n;
    let f = ctx.f_poly();
    let bad = |reason: &str| GlnError::InvalidTag { tag: tag.name().into(), n, reason: reason.into() };
    let value = match &tag {
        StandardTag::TF => t_f(n, &f),
        StandardTag::H1 => h1(n),
        StandardTag::HF => h_f(n, &f),
        StandardTag::Wn => weyl(n),
        StandardTag::J(g) => {
            if g.dim() + 1 != n {
                return Err(bad("j expects an (n-1)x(n-1) argument"));
            }
            j(g)
        }
        StandardTag::JDelta(g, delta) => {
            if g.dim() + 1 != n {
                return Err(bad("j_delta expects an (n-1)x(n-1) argument"));
            }
            j_delta(g, &ctx.varpi_poly(), *delta)?
        }
        StandardTag::DeltaDelta(delta) => delta_delta(n, &ctx.varpi_poly(), *delta)?,
        StandardTag::Dx(x) => d_x(n, x),
        StandardTag::NMat => n_mat(n, &f),
        StandardTag::NPrime(x) => n_prime(n, &f, x)?,
        StandardTag::DFe(x) => {
            if n < 3 {
                return Err(bad("d collapses for n = 2 (first and last entries collide)"));
            }
            d_fe(n, x)?
        }
        StandardTag::WTilde => w_tilde(n),
    };
    Ok(NamedMatrix { tag: tag.name().to_string(), value })
}

fn pow(x: &LaurentPoly, e: i64) -> LaurentPoly {
    x.pow(e).expect("power of a unit")
}

/// The longest Weyl element `w_n`.
pub fn weyl(n: usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(n, |i, j| if i + j + 1 == n { LaurentPoly::one() } else { LaurentPoly::zero() })
}

/// `t_(f) = diag(f^{n-1}, ..., 1)`.
pub fn t_f(n: usize, f: &LaurentPoly) -> LaurentMatrix {
    LaurentMatrix::diag((0..n).map(|i| pow(f, (n - 1 - i) as i64)).collect())
}

/// `t_(f)^{-1}`; requires `f` to be a unit of the Laurent ring.
pub fn t_f_inv(n: usize, f: &LaurentPoly) -> LaurentMatrix {
    LaurentMatrix::diag((0..n).map(|i| pow(f, -((n - 1 - i) as i64))).collect())
}

/// `h^(1)`: `w_{n-1}` in the top-left block, last column of ones, zeros elsewhere.
pub fn h1(n: usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(n, |i, j| {
        let one = j == n - 1 || (i < n - 1 && i + j + 2 == n);
        if one {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `h^(f) = t_(f)^{-1} h^(1) t_(f)`.
pub fn h_f(n: usize, f: &LaurentPoly) -> LaurentMatrix {
    t_f_inv(n, f).mul(&h1(n)).mul(&t_f(n, f))
}

/// `j(g) = diag(g, 1)`.
pub fn j(g: &LaurentMatrix) -> LaurentMatrix {
    let m = g.dim();
    LaurentMatrix::from_fn(m + 1, |a, b| {
        if a < m && b < m {
            g.get(a, b).clone()
        } else if a == m && b == m {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `j_delta(g) = diag(g, varpi^delta)`.
pub fn j_delta(g: &LaurentMatrix, varpi: &LaurentPoly, delta: i64) -> Result<LaurentMatrix, GlnError> {
    let mut m = j(g);
    let n = m.dim();
    m.set(n - 1, n - 1, varpi.pow(delta)?);
    Ok(m)
}

/// `Delta_delta = diag(1, ..., 1, varpi^delta)` of size `n`.
pub fn delta_delta(n: usize, varpi: &LaurentPoly, delta: i64) -> Result<LaurentMatrix, GlnError> {
    let mut m = LaurentMatrix::identity(n);
    m.set(n - 1, n - 1, varpi.pow(delta)?);
    Ok(m)
}

/// `d_(x) = diag(x, 1, ..., 1)` of size `n`.
pub fn d_x(n: usize, x: &LaurentPoly) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    m.set(0, 0, x.clone());
    m
}

/// The matrix `n`: diagonal `(-1, 1, ..., 1, -1)` with `-f` on the subdiagonal.
pub fn n_mat(n: usize, f: &LaurentPoly) -> LaurentMatrix {
    LaurentMatrix::from_fn(n, |i, k| {
        if i == k {
            if i == 0 || i == n - 1 {
                LaurentPoly::from_int(-1)
            } else {
                LaurentPoly::one()
            }
        } else if i == k + 1 {
            -f
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `n' = d_(x)^{-1} U d_(x)` in `GL_{n-1}` with `U_{ij} = f^{j-i}` for `j >= i`.
pub fn n_prime(n: usize, f: &LaurentPoly, x: &LaurentPoly) -> Result<LaurentMatrix, GlnError> {
    let m = n - 1;
    let u = LaurentMatrix::from_fn(m, |i, k| if k >= i { pow(f, (k - i) as i64) } else { LaurentPoly::zero() });
    let dx = d_x(m, x);
    Ok(dx.inverse()?.mul(&u).mul(&dx))
}

/// `d = diag(-x, -1, ..., -1, (-1)^n x^{-1})` in `GL_{n-1}`.
pub fn d_fe(n: usize, x: &LaurentPoly) -> Result<LaurentMatrix, GlnError> {
    let m = n - 1;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let last = x.inv_unit()?.scale(&exact_arith::Cyclo::from_int(sign));
    Ok(LaurentMatrix::diag(
        (0..m)
            .map(|i| {
                if i == 0 {
                    -x
                } else if i == m - 1 {
                    last.clone()
                } else {
                    LaurentPoly::from_int(-1)
                }
            })
            .collect(),
    ))
}

/// `w~ = j(w_{n-1}) w_n`.
pub fn w_tilde(n: usize) -> LaurentMatrix {
    j(&weyl(n - 1)).mul(&weyl(n))
}

/// The outer involution `iota(g) = w g^{-t} w`.
pub fn iota(g: &LaurentMatrix) -> Result<LaurentMatrix, GlnError> {
    let w = weyl(g.dim());
    Ok(w.mul(&g.inverse()?.transpose()).mul(&w))
}
