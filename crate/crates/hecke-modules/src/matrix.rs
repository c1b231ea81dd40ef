//! Dense square matrices and vectors over cyclotomic fields.

use std::fmt;

use exact_arith::{Cyclo, Rat};
use rand::Rng;
use serde::Serialize;

use crate::ModuleError;

/// A column vector over `Q(zeta_m)`.
pub type Vector = Vec<Cyclo>;

/// A dense square matrix over `Q(zeta_m)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloMatrix {
    dim: usize,
    entries: Vec<Cyclo>,
}

impl CycloMatrix {
    pub fn zeros(dim: usize) -> CycloMatrix {
        CycloMatrix { dim, entries: vec![Cyclo::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> CycloMatrix {
        CycloMatrix::scalar(dim, Cyclo::one())
    }

    pub fn scalar(dim: usize, c: Cyclo) -> CycloMatrix {
        CycloMatrix::diag(vec![c; dim])
    }

    pub fn diag(d: Vec<Cyclo>) -> CycloMatrix {
        let dim = d.len();
        let mut m = CycloMatrix::zeros(dim);
        for (i, c) in d.into_iter().enumerate() {
            m.entries[i * dim + i] = c;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cyclo) -> CycloMatrix {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        CycloMatrix { dim, entries }
    }

    /// Build from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Result<CycloMatrix, ModuleError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(ModuleError::DimensionMismatch { expected: dim, got: rows.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(0) });
        }
        Ok(CycloMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.entries[i * self.dim + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclo>> {
        self.entries.chunks(self.dim.max(1)).map(<[Cyclo]>::to_vec).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn add(&self, other: &CycloMatrix) -> CycloMatrix {
        CycloMatrix { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CycloMatrix) -> CycloMatrix {
        CycloMatrix { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Cyclo) -> CycloMatrix {
        CycloMatrix { dim: self.dim, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> CycloMatrix {
        CycloMatrix { dim: self.dim, entries: self.entries.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        let n = self.dim;
        CycloMatrix::from_fn(n, |i, j| {
            (0..n)
                .filter(|&k| !self.get(i, k).is_zero() && !other.get(k, j).is_zero())
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        })
    }

    pub fn apply(&self, v: &[Cyclo]) -> Vector {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&k| !self.get(i, k).is_zero() && !v[k].is_zero())
                    .map(|k| self.get(i, k) * &v[k])
                    .sum()
            })
            .collect()
    }

    pub fn commutes_with(&self, other: &CycloMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> CycloMatrix {
        (0..e).fold(CycloMatrix::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<CycloMatrix> {
        let n = self.dim;
        let mut a = self.to_rows();
        let mut inv = CycloMatrix::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = a[col][col].inv().ok()?;
            for k in 0..n {
                a[col][k] = &a[col][k] * &scale;
                inv[col][k] = &inv[col][k] * &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for k in 0..n {
                    let t = &factor * &a[col][k];
                    a[r][k] = &a[r][k] - &t;
                    let t = &factor * &inv[col][k];
                    inv[r][k] = &inv[r][k] - &t;
                }
            }
        }
        Some(CycloMatrix { dim: n, entries: inv.into_iter().flatten().collect() })
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CycloMatrix) -> CycloMatrix {
        let (a, b) = (self.dim, other.dim);
        CycloMatrix::from_fn(a * b, |i, j| self.get(i / b, j / b) * other.get(i % b, j % b))
    }

    /// A random rational matrix of determinant 1 (product of unit triangular
    /// matrices with small integer entries), used for similarity conjugation.
    pub fn random_unimodular<R: Rng>(dim: usize, rng: &mut R) -> CycloMatrix {
        let mut upper = CycloMatrix::identity(dim);
        let mut lower = CycloMatrix::identity(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                upper.entries[i * dim + j] = Cyclo::from_int(rng.gen_range(-2..=2));
                lower.entries[j * dim + i] = Cyclo::from_int(rng.gen_range(-2..=2));
            }
        }
        upper.mul(&lower)
    }
}

impl fmt::Display for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `c · v`.
pub fn scale_vec(v: &[Cyclo], c: &Cyclo) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(v: &[Cyclo]) -> bool {
    v.iter().all(Cyclo::is_zero)
}

/// If `a = c · b` for some scalar `c` (with `b ≠ 0`), return `c`.
pub fn proportionality(a: &[Cyclo], b: &[Cyclo]) -> Option<Cyclo> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = &a[k] * &b[k].inv().ok()?;
    a.iter().zip(b).all(|(x, y)| *x == y * &c).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn m(rows: &[&[i64]]) -> CycloMatrix {
        CycloMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyclo::from_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), CycloMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn cyclotomic_inverse() {
        let z = Cyclo::root_of_unity(3, 1);
        let a = CycloMatrix::from_rows(vec![vec![z.clone(), Cyclo::one()], vec![Cyclo::zero(), &z + &Cyclo::one()]]).unwrap();
        assert_eq!(a.inverse().unwrap().mul(&a), CycloMatrix::identity(2));
    }

    #[test]
    fn unimodular_is_invertible() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let u = CycloMatrix::random_unimodular(4, &mut rng);
        assert_eq!(u.mul(&u.inverse().unwrap()), CycloMatrix::identity(4));
    }

    #[test]
    fn kron_and_proportionality() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&CycloMatrix::identity(2));
        assert_eq!(k.get(2, 0), &Cyclo::from_int(3));
        assert_eq!(k.get(3, 1), &Cyclo::from_int(3));
        let v = vec![Cyclo::from_int(2), Cyclo::from_int(4)];
        let w = vec![Cyclo::from_int(1), Cyclo::from_int(2)];
        assert_eq!(proportionality(&v, &w), Some(Cyclo::from_int(2)));
        assert_eq!(proportionality(&v, &[Cyclo::from_int(1), Cyclo::from_int(3)]), None);
    }
}
