//! p-adic linear algebra over `Z_(p)`: Smith reduction, membership in the monoid
//! `B K` and random elements of `K`.

use exact_arith::padic::valuation_unchecked;
use exact_arith::{int, Rat, RatMatrix};
use num_traits::{One, Zero};
use rand::Rng;

use crate::Level;

/// Result of reducing a matrix `A` over the local ring `Z_(p)`: `E A F = S` with
/// `E`, `F` invertible over `Z_(p)` and `S` diagonal.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Valuations of the nonzero diagonal entries of `S`, in pivot order (non-decreasing).
    pub valuations: Vec<i64>,
    /// `E^{-1}`; its first `rank` columns are a `Z_(p)`-basis of `col(A) ∩ Z_(p)^n`.
    pub left_inverse: RatMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }
}

fn val(x: &Rat, p: u64) -> Option<i64> {
    valuation_unchecked(x, p).finite()
}

/// Smith reduction over `Z_(p)` with minimal-valuation pivoting.
pub fn smith(a: &RatMatrix, p: u64) -> Smith {
    let (n, c) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut einv = RatMatrix::identity(n);
    let mut valuations = Vec::new();
    for k in 0..n.min(c) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..c {
                if let Some(v) = val(&m[(i, j)], p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if pi != k {
            for col in 0..c {
                let t = m[(k, col)].clone();
                m[(k, col)] = m[(pi, col)].clone();
                m[(pi, col)] = t;
            }
            for row in 0..n {
                let t = einv[(row, k)].clone();
                einv[(row, k)] = einv[(row, pi)].clone();
                einv[(row, pi)] = t;
            }
        }
        if pj != k {
            for row in 0..n {
                let t = m[(row, k)].clone();
                m[(row, k)] = m[(row, pj)].clone();
                m[(row, pj)] = t;
            }
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            let f = &m[(i, k)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for col in k..c {
                let d = &f * &m[(k, col)];
                m[(i, col)] -= d;
            }
            // E <- (I - f e_i e_k^T) E, so E^{-1} <- E^{-1} (I + f e_i e_k^T).
            for row in 0..n {
                let d = &f * &einv[(row, i)];
                einv[(row, k)] += d;
            }
        }
        for j in k + 1..c {
            let f = &m[(k, j)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for row in k..n {
                let d = &f * &m[(row, k)];
                m[(row, j)] -= d;
            }
        }
        valuations.push(v);
    }
    Smith { valuations, left_inverse: einv }
}

/// Elementary divisor exponents of a square matrix, sorted non-increasingly
/// (`None` if singular).
pub fn elementary_divisors(g: &RatMatrix, p: u64) -> Option<Vec<i64>> {
    let s = smith(g, p);
    if s.rank() < g.rows() {
        return None;
    }
    let mut v = s.valuations;
    v.sort_unstable_by(|a, b| b.cmp(a));
    Some(v)
}

/// `x in B K` where `B` is the upper triangular Borel subgroup of `GL_n(Q_p)`.
///
/// For `r >= 1`: `x = b k` iff `x^{-1} = k^{-1} b^{-1}`, i.e. iff for every `j` the span
/// of the first `j` columns of `x^{-1}` contains an integral vector with a unit `j`-th
/// coordinate and coordinates of valuation `>= r` below it (the columns of an Iwahori
/// element have unit diagonal entries).
pub fn in_monoid(x: &RatMatrix, level: &Level) -> bool {
    let Ok(xinv) = x.inverse() else { return false };
    if level.r == 0 {
        // Iwasawa decomposition: G = B GL_n(Z_p).
        return true;
    }
    let n = level.n;
    let scale = num_traits::pow(int(level.p as i64), level.r as usize).recip();
    for j in 0..n {
        let a = RatMatrix::from_fn(n, j + 1, |row, col| {
            if row > j {
                &xinv[(row, col)] * &scale
            } else {
                xinv[(row, col)].clone()
            }
        });
        let s = smith(&a, level.p);
        let basis = &s.left_inverse;
        let ok = (0..s.rank()).any(|col| val(&basis[(j, col)], level.p) == Some(0));
        if !ok {
            return false;
        }
    }
    true
}

/// A random element of `K`: `w u d l` with `u` upper unipotent, `d` diagonal units,
/// `l` lower unipotent with entries in `p^r Z` and, at spherical level, `w` a random
/// permutation matrix.
pub fn random_in_level<R: Rng + ?Sized>(level: &Level, rng: &mut R) -> RatMatrix {
    let n = level.n;
    let p = level.p as i64;
    let pr = p.pow(level.r);
    let bound = p * p + 1;
    let mut u = RatMatrix::identity(n);
    let mut l = RatMatrix::identity(n);
    let mut d = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i < j {
                u[(i, j)] = int(rng.gen_range(-bound..=bound));
            } else if i > j {
                l[(i, j)] = int(pr * rng.gen_range(-bound..=bound));
            }
        }
        let unit = loop {
            let x = rng.gen_range(-bound..=bound);
            if x % p != 0 {
                break x;
            }
        };
        d[(i, i)] = int(unit);
    }
    let k = u.mul(&d).mul(&l);
    if level.r > 0 {
        return k;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let w = RatMatrix::from_fn(n, n, |a, b| if perm[a] == b { Rat::one() } else { Rat::zero() });
    w.mul(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn smith_valuations() {
        let a = RatMatrix::from_i64(&[&[4, 2], &[0, 6]]);
        assert_eq!(elementary_divisors(&a, 2), Some(vec![2, 1]));
        let b = RatMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        assert_eq!(elementary_divisors(&b, 2), Some(vec![2, 0]));
        assert_eq!(elementary_divisors(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]]), 2), None);
    }

    #[test]
    fn borel_iwahori_monoid() {
        let l = Level::new(2, 2, 1).unwrap();
        assert!(in_monoid(&RatMatrix::from_i64(&[&[2, 1], &[0, 1]]), &l));
        assert!(in_monoid(&RatMatrix::from_i64(&[&[1, 0], &[2, 1]]), &l));
        // [[1,0],[p,1]] diag(1,p) is not in B K_I.
        assert!(!in_monoid(&RatMatrix::from_i64(&[&[1, 0], &[2, 2]]), &l));
        assert!(!in_monoid(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]]), &l));
        // Iwasawa: everything lies in B GL_n(Z_p).
        assert!(in_monoid(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]]), &l.spherical()));
    }

    #[test]
    fn random_elements_lie_in_level() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for (n, p, r) in [(2, 2, 1), (3, 3, 1), (3, 2, 0), (2, 5, 2)] {
            let l = Level::new(n, p, r).unwrap();
            for _ in 0..20 {
                let k = random_in_level(&l, &mut rng);
                assert!(l.contains(&k));
                assert!(in_monoid(&k, &l));
            }
        }
    }
}
