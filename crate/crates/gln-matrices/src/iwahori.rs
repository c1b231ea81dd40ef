use exact_arith::padic::{is_p_integral, valuation_unchecked};
use exact_arith::{Rat, RatMatrix};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Membership in the Iwahori subgroup `I^(r)` of `GL_n(Z_p)`: all entries p-integral,
/// determinant a p-adic unit, entries strictly below the diagonal of valuation `>= r`.
pub fn iwahori_member(g: &RatMatrix, p: u64, r: u32) -> bool {
    if !g.is_square() {
        return false;
    }
    let n = g.rows();
    for i in 0..n {
        for j in 0..n {
            let x = &g[(i, j)];
            if !is_p_integral(x, p) {
                return false;
            }
            if i > j && !valuation_unchecked(x, p).at_least(r as i64) {
                return false;
            }
        }
    }
    valuation_unchecked(&g.det(), p).finite() == Some(0)
}

/// Reduce a p-integral rational modulo `p` (as an integer in `0..p`).
pub fn rat_mod_p(x: &Rat, p: u64) -> Option<u64> {
    if !is_p_integral(x, p) {
        return None;
    }
    let pb = BigInt::from(p);
    let num = ((x.numer() % &pb) + &pb) % &pb;
    let den = ((x.denom() % &pb) + &pb) % &pb;
    if den.is_zero() {
        return None;
    }
    let (num, den) = (num.to_u64()?, den.to_u64()?);
    // Inverse of den modulo p by Fermat.
    let mut inv = 1u64;
    let (mut base, mut e) = (den % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Some(num * inv % p)
}
