//! The tower `C(p^m)`, `m ≥ 1`, of ray class groups: `Z/h × (Z/p^m)^×`.
//!
//! `h = 1` is the model over `Q` (the narrow ray class group mod `p^m∞`); `h > 1`
//! adds a cyclic prime-to-`p` class-group part on which the transition maps are
//! the identity, so every kernel of `C(p^{m+1}) → C(p^m)` still has order `p`.

use std::fmt;

use exact_arith::{euler_phi, is_prime, Cyclo};
use gauss_sums::{root, MultChar};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::DistError;

/// A class `(t, x)` with `t ∈ Z/h` and `x` a unit residue mod `p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Class {
    #[serde(default, skip_serializing_if = "is_zero")]
    pub t: u64,
    pub x: u64,
}

fn is_zero(t: &u64) -> bool {
    *t == 0
}

impl Class {
    pub fn new(t: u64, x: u64) -> Class {
        Class { t, x }
    }

    pub fn unit(x: u64) -> Class {
        Class { t: 0, x }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 0 {
            write!(f, "{}", self.x)
        } else {
            write!(f, "({}, {})", self.t, self.x)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RayTower {
    pub p: u64,
    pub class_number: u64,
}

impl RayTower {
    /// The tower over `Q`.
    pub fn rational(p: u64) -> Result<RayTower, DistError> {
        RayTower::new(p, 1)
    }

    pub fn new(p: u64, class_number: u64) -> Result<RayTower, DistError> {
        if !is_prime(p) {
            return Err(DistError::InvalidParameters(format!("{p} is not prime")));
        }
        if class_number == 0 {
            return Err(DistError::InvalidParameters("class number must be positive".into()));
        }
        Ok(RayTower { p, class_number })
    }

    pub fn modulus(&self, m: u32) -> u64 {
        self.p.pow(m)
    }

    /// `|C(p^m)| = h·φ(p^m)`.
    pub fn size(&self, m: u32) -> u64 {
        self.class_number * euler_phi(self.modulus(m))
    }

    pub fn is_class(&self, c: Class, m: u32) -> bool {
        c.t < self.class_number && c.x < self.modulus(m) && c.x % self.p != 0
    }

    /// All classes of level `m ≥ 1` in increasing order.
    pub fn classes(&self, m: u32) -> Vec<Class> {
        let pm = self.modulus(m);
        (0..self.class_number)
            .flat_map(|t| (1..pm).filter(|x| x % self.p != 0).map(move |x| Class { t, x }))
            .collect()
    }

    /// Image of a class of level `m` at level `k ≤ m`.
    pub fn reduce(&self, c: Class, k: u32) -> Class {
        Class { t: c.t, x: c.x % self.modulus(k) }
    }

    /// The `p` classes `x + a·p^m`, `a mod p`, of level `m + 1` above `c`.
    pub fn lifts(&self, c: Class, m: u32) -> impl Iterator<Item = Class> + '_ {
        let pm = self.modulus(m);
        (0..self.p).map(move |a| Class { t: c.t, x: c.x + a * pm })
    }

    /// `x^∨ = (−1)^{n−1}·x^{−1}`, the sign applied to the `p`-component only.
    pub fn vee(&self, c: Class, m: u32, n: usize) -> Class {
        let pm = self.modulus(m) as i128;
        let inv = (c.x as i128).extended_gcd(&pm).x.rem_euclid(pm);
        let x = if n % 2 == 0 { (pm - inv) % pm } else { inv };
        Class { t: (self.class_number - c.t) % self.class_number, x: x as u64 }
    }
}

/// A character of the tower: `(t, x) ↦ ζ_h^{j·t}·χ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerChar {
    pub chi: MultChar,
    pub class_exponent: u64,
}

impl From<MultChar> for TowerChar {
    fn from(chi: MultChar) -> TowerChar {
        TowerChar { chi, class_exponent: 0 }
    }
}

impl TowerChar {
    pub fn new(chi: MultChar, class_exponent: u64) -> TowerChar {
        TowerChar { chi, class_exponent }
    }

    pub fn value(&self, tower: &RayTower, c: Class) -> Cyclo {
        let h = tower.class_number;
        &root(h, self.class_exponent % h * c.t % h) * &self.chi.value(c.x as i64)
    }

    pub fn inverse(&self, tower: &RayTower) -> TowerChar {
        let h = tower.class_number;
        TowerChar { chi: self.chi.inverse(), class_exponent: (h - self.class_exponent % h) % h }
    }

    /// Conductor exponent of the `p`-part.
    pub fn conductor_exponent(&self) -> u32 {
        self.chi.conductor_exponent()
    }

    pub fn is_trivial(&self, tower: &RayTower) -> bool {
        self.chi.is_trivial() && self.class_exponent % tower.class_number == 0
    }
}

/// All characters of `C(p^m)`.
pub fn tower_characters(tower: &RayTower, m: u32) -> Result<Vec<TowerChar>, DistError> {
    let chars = gauss_sums::all_characters(tower.p, m)?;
    Ok((0..tower.class_number)
        .flat_map(|j| chars.iter().map(move |chi| TowerChar::new(chi.clone(), j)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_lifts() {
        let t = RayTower::new(3, 2).unwrap();
        assert_eq!(t.classes(2).len() as u64, t.size(2));
        assert_eq!(t.size(2), 12);
        for c in t.classes(1) {
            let lifts: Vec<Class> = t.lifts(c, 1).collect();
            assert_eq!(lifts.len(), 3);
            assert!(lifts.iter().all(|l| t.is_class(*l, 2) && t.reduce(*l, 1) == c));
        }
    }

    #[test]
    fn vee_examples() {
        let t = RayTower::rational(5).unwrap();
        assert_eq!(t.vee(Class::unit(2), 1, 2), Class::unit(2));
        assert_eq!(t.vee(Class::unit(2), 1, 3), Class::unit(3));
        let t27 = RayTower::new(3, 4).unwrap();
        for n in [2, 3] {
            for c in t27.classes(3) {
                assert_eq!(t27.vee(t27.vee(c, 3, n), 3, n), c);
            }
        }
    }
}
