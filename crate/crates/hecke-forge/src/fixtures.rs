//! Deterministic test data shared by the suites and the acceptance checks.

use exact_arith::{Cyclo, Rat};
use hecke_modules::{CycloMatrix, HeckeModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A reproducible RNG for a named case: the run seed mixed with an FNV-1a hash of the name.
pub fn case_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn permutations<T: Clone>(xs: &[T]) -> Vec<Vec<T>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    (0..xs.len())
        .flat_map(|k| {
            let mut rest = xs.to_vec();
            let x = rest.remove(k);
            permutations(&rest).into_iter().map(move |mut p| {
                p.insert(0, x.clone());
                p
            })
        })
        .collect()
}

/// Diagonal module whose joint `U`-spectra are all orderings of `lambda`.
pub fn perm_module(lambda: &[Cyclo], q: &Rat) -> HeckeModule {
    HeckeModule::from_spectra(lambda.len(), q.clone(), &permutations(lambda)).expect("distinct spectra commute")
}

/// `n` distinct non-zero integers in `[−9, 9]`.
pub fn random_roots<R: Rng>(n: usize, rng: &mut R) -> Vec<Cyclo> {
    let mut out: Vec<i64> = Vec::new();
    while out.len() < n {
        let x = rng.gen_range(-9i64..=9);
        if x != 0 && !out.contains(&x) {
            out.push(x);
        }
    }
    out.into_iter().map(Cyclo::from_int).collect()
}

/// A permutation module conjugated by a random unimodular matrix.
pub fn random_module<R: Rng>(n: usize, rng: &mut R) -> (HeckeModule, Vec<Cyclo>) {
    let lambda = random_roots(n, rng);
    let q = Rat::from_integer([2, 3, 5][rng.gen_range(0..3)].into());
    let base = perm_module(&lambda, &q);
    let p = CycloMatrix::random_unimodular(base.dim(), rng);
    (base.conjugated(&p).expect("invertible conjugation"), lambda)
}

pub fn random_vector<R: Rng>(dim: usize, rng: &mut R) -> Vec<Cyclo> {
    (0..dim).map(|_| Cyclo::from_int(rng.gen_range(-5..=5))).collect()
}
