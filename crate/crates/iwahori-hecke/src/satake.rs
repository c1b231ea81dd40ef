//! Symmetric polynomials in `X_1, ..., X_n` over `Q(q)` and the Satake transform.

use std::fmt;

use exact_arith::padic::valuation_unchecked;
use exact_arith::{Cyclo, LaurentPoly, Rat, Var};
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::operators::spherical_double_coset;
use crate::{CosetSum, HeckeError, Level};

/// A Laurent polynomial in `q` and `X_1, ..., X_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoly {
    pub n: usize,
    pub poly: LaurentPoly,
}

fn x_name(i: usize) -> String {
    format!("X{i}")
}

/// Substitute each variable by a Laurent polynomial (variables mapped to `None` stay).
fn substitute<F: Fn(Var) -> Option<LaurentPoly>>(p: &LaurentPoly, sub: F) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let mut t = LaurentPoly::constant(c.clone());
        for &(v, e) in m.factors() {
            let base = sub(v).unwrap_or_else(|| LaurentPoly::var_pow(v, 1));
            t = &t * &base.pow(e).expect("substituted variables are units");
        }
        out = &out + &t;
    }
    out
}

impl SymPoly {
    pub fn new(n: usize, poly: LaurentPoly) -> SymPoly {
        SymPoly { n, poly }
    }

    /// The variable `X_i` (1-based).
    pub fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(&x_name(i))
    }

    /// The variable `q`.
    pub fn q() -> LaurentPoly {
        LaurentPoly::var("q")
    }

    /// Elementary symmetric polynomial `sigma_nu(X_1, ..., X_n)`.
    pub fn elementary(n: usize, nu: usize) -> LaurentPoly {
        // Coefficient of t^nu in prod (1 + X_i t).
        let mut e = vec![LaurentPoly::one()];
        for i in 1..=n {
            let x = SymPoly::x(i);
            let mut next = vec![LaurentPoly::zero(); e.len() + 1];
            for (k, ek) in e.iter().enumerate() {
                next[k] = &next[k] + ek;
                next[k + 1] = &next[k + 1] + &(ek * &x);
            }
            e = next;
        }
        e.get(nu).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Invariance under all permutations of `X_1, ..., X_n` (checked on adjacent transpositions).
    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| {
            let (a, b) = (Var::new(&x_name(i)), Var::new(&x_name(i + 1)));
            let swapped = substitute(&self.poly, |v| {
                if v == a {
                    Some(LaurentPoly::var_pow(b, 1))
                } else if v == b {
                    Some(LaurentPoly::var_pow(a, 1))
                } else {
                    None
                }
            });
            swapped == self.poly
        })
    }

    /// Instantiate `q` at a rational value.
    pub fn eval_q(&self, q: &Rat) -> SymPoly {
        let qv = Var::new("q");
        let poly = substitute(&self.poly, |v| (v == qv).then(|| LaurentPoly::from_rat(q.clone())));
        SymPoly { n: self.n, poly }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        SymPoly { n: self.n, poly: &self.poly * &other.poly }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        SymPoly { n: self.n, poly: &self.poly + &other.poly }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        SymPoly { n: self.n, poly: &self.poly - &other.poly }
    }

    pub fn scale(&self, c: &LaurentPoly) -> SymPoly {
        SymPoly { n: self.n, poly: &self.poly * c }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.poly.to_string())
    }
}

/// The Satake image of `T_nu` as displayed: `q^{nu(nu+1)/2} sigma_nu(X)`, `q` symbolic.
pub fn satake(nu: usize, n: usize) -> Result<SymPoly, HeckeError> {
    if nu > n {
        return Err(HeckeError::InvalidTag { tag: format!("T_{nu}"), n });
    }
    let qp = SymPoly::q().pow((nu * (nu + 1) / 2) as i64)?;
    Ok(SymPoly::new(n, &qp * &SymPoly::elementary(n, nu)))
}

/// The integral transform `g K -> q^{sum_i a_i (i-1)} X^a` (with `q = p`) of a sum of
/// cosets with upper triangular representatives, `a_i` the valuation of `g_ii`.
pub fn satake_integral(sum: &CosetSum) -> Result<SymPoly, HeckeError> {
    let level = sum.level();
    let p = level.p;
    let mut out = LaurentPoly::zero();
    for (c, coeff) in sum.terms() {
        let g = c.rep();
        if !g.is_upper_triangular() {
            return Err(HeckeError::NotTriangular(g.to_strings()));
        }
        let mut term = LaurentPoly::from_rat(coeff.clone());
        let mut qexp = 0i64;
        for i in 0..level.n {
            let a = valuation_unchecked(&g[(i, i)], p)
                .finite()
                .ok_or_else(|| HeckeError::InvalidParameters("singular representative".into()))?;
            qexp += a * i as i64;
            term = &term * &SymPoly::x(i + 1).pow(a)?;
        }
        let qp = num_traits::pow(level.q(), qexp.unsigned_abs() as usize);
        let qp = if qexp < 0 { qp.recip() } else { qp };
        out = &out + &term.scale(&Cyclo::from_rat(qp));
    }
    Ok(SymPoly::new(level.n, out))
}

/// `prod_{i,j} (1 - alpha_i beta_j T)`, the reciprocal of the local Rankin-Selberg factor,
/// as a polynomial in the variable `T`.
pub fn shintani_lfactor(alpha: &[LaurentPoly], beta: &[LaurentPoly]) -> Result<LaurentPoly, HeckeError> {
    if alpha.iter().chain(beta).any(LaurentPoly::is_zero) {
        return Err(HeckeError::InvalidParameters("Satake parameters must be nonzero".into()));
    }
    let t = LaurentPoly::var("T");
    let one = LaurentPoly::one();
    let mut out = one.clone();
    for a in alpha {
        for b in beta {
            out = &out * &(&one - &(&(a * b) * &t));
        }
    }
    Ok(out)
}

/// Spherical relations on `GL_2`: `T_1 * T_1 = T_(2,0) + (q+1) T_2` by coset convolution,
/// multiplicativity of the integral transform, and the value of the displayed transform
/// on `T_(2,0)` induced by that relation.
#[derive(Debug, Clone, Serialize)]
pub struct SatakeReport {
    pub p: u64,
    pub hecke_relation_holds: bool,
    pub integral_multiplicative: bool,
    /// `S(T_1)^2 - (q+1) S(T_2)` with the displayed normalisation, `q` symbolic.
    pub display_t20: SymPoly,
    /// Integral transform of `T_(2,0)` at `q = p`.
    pub integral_t20: SymPoly,
}

pub fn verify_spherical_gl2(p: u64) -> Result<SatakeReport, HeckeError> {
    let level = Level::new(2, p, 0)?;
    let t1 = spherical_double_coset(&[1, 0], &level)?;
    let t2 = spherical_double_coset(&[1, 1], &level)?;
    let t20 = spherical_double_coset(&[2, 0], &level)?;
    let square = t1.convolve(&t1)?;
    let q1 = level.q() + Rat::one();
    let rhs = t20.add(&t2.scale(&q1))?;
    let relation = square.same_as(&rhs);
    let s1 = satake_integral(&t1)?;
    let multiplicative = satake_integral(&square)? == s1.mul(&s1);
    let q = SymPoly::q();
    let display_t20 = satake(1, 2)?.mul(&satake(1, 2)?).sub(&satake(2, 2)?.scale(&(&q + &LaurentPoly::one())));
    Ok(SatakeReport {
        p,
        hecke_relation_holds: relation,
        integral_multiplicative: multiplicative,
        display_t20,
        integral_t20: satake_integral(&t20)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_values() {
        let q = SymPoly::q();
        let (x1, x2) = (SymPoly::x(1), SymPoly::x(2));
        assert_eq!(satake(1, 2).unwrap().poly, &q * &(&x1 + &x2));
        assert_eq!(satake(2, 2).unwrap().poly, &q.pow(3).unwrap() * &(&x1 * &x2));
        assert_eq!(satake(0, 3).unwrap().poly, LaurentPoly::one());
        assert!(satake(3, 2).is_err());
        for nu in 0..=3 {
            assert!(satake(nu, 3).unwrap().is_symmetric());
        }
        assert!(!SymPoly::new(2, x1.clone()).is_symmetric());
    }

    #[test]
    fn shintani_small() {
        let a: Vec<LaurentPoly> = ["a1", "a2"].iter().map(|s| LaurentPoly::var(s)).collect();
        let b = vec![LaurentPoly::var("b")];
        let t = LaurentPoly::var("T");
        let one = LaurentPoly::one();
        let expect = &(&one - &(&(&a[0] * &b[0]) * &t)) * &(&one - &(&(&a[1] * &b[0]) * &t));
        assert_eq!(shintani_lfactor(&a, &b).unwrap(), expect);
        assert!(shintani_lfactor(&[LaurentPoly::zero()], &b).is_err());
    }
}
