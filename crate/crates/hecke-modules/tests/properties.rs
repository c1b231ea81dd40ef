use exact_arith::{int, Cyclo};
use hecke_modules::{project, verify_dual_projection, CycloMatrix, HeckeModule, HeckeRoots, PairModule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perms(xs: &[i64]) -> Vec<Vec<i64>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    (0..xs.len())
        .flat_map(|k| {
            let mut rest = xs.to_vec();
            let x = rest.remove(k);
            perms(&rest).into_iter().map(move |mut p| {
                p.insert(0, x);
                p
            })
        })
        .collect()
}

fn module(lambda: &[i64], q: i64, seed: u64) -> HeckeModule {
    let spectra: Vec<Vec<Cyclo>> = perms(lambda).into_iter().map(|p| p.into_iter().map(Cyclo::from_int).collect()).collect();
    let base = HeckeModule::from_spectra(lambda.len(), int(q), &spectra).unwrap();
    if seed == 0 {
        return base;
    }
    let p = CycloMatrix::random_unimodular(base.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
    base.conjugated(&p).unwrap()
}

/// Distinct non-zero roots for GL_n, n ∈ {2, 3}.
fn roots_strategy() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=3)
        .prop_flat_map(|n| prop::collection::btree_set(prop_oneof![-9i64..=-1, 1i64..=9], n))
        .prop_map(|s| s.into_iter().collect())
}

fn vector(dim: usize, entries: &[i64]) -> Vec<Cyclo> {
    (0..dim).map(|k| Cyclo::from_int(entries[k % entries.len()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_idempotent_equivariant_and_into_eigenspace(
        lambda in roots_strategy(),
        q in prop_oneof![Just(2i64), Just(3), Just(5)],
        seed in 0u64..1000,
        count in 0usize..=3,
        entries in prop::collection::vec(-5i64..=5, 1..6),
    ) {
        let n = lambda.len();
        let m = module(&lambda, q, seed);
        let roots = HeckeRoots::new(lambda.iter().map(|&x| Cyclo::from_int(x)).collect(), int(q)).projecting(count.min(n));
        let v = vector(m.dim(), &entries);
        let once = project(&v, &roots, &m).unwrap();
        // idempotence needs V_{p,j} = η_j on the image for every j, which M_λ forces only when count ≥ n − 1
        if roots.count() + 1 >= n {
            prop_assert_eq!(project(&once, &roots, &m).unwrap(), once.clone());
        }
        prop_assert!(m.in_eigenspace(&once, &roots, roots.count()));
        for nu in 0..=n {
            let shifted = project(&m.v(nu).apply(&v), &roots, &m).unwrap();
            prop_assert_eq!(shifted, m.v(nu).apply(&once));
        }
    }

    #[test]
    fn dual_roots_are_an_involution(lambda in roots_strategy(), q in prop_oneof![Just(2i64), Just(3)], seed in 0u64..1000) {
        let n = lambda.len();
        let roots = HeckeRoots::new(lambda.iter().map(|&x| Cyclo::from_int(x)).collect(), int(q));
        let dual = roots.dual(n).unwrap();
        prop_assert_eq!(dual.dual(n).unwrap(), roots.clone());
        prop_assert_eq!(&dual.eta(n).unwrap() * &roots.eta(n).unwrap(), Cyclo::one());
        let m = module(&lambda, q, seed);
        prop_assert_eq!(m.contragredient().unwrap().contragredient().unwrap(), m);
    }

    #[test]
    fn up_eigenvalue_transforms_under_duality(
        lambda in prop::collection::btree_set(1i64..=7, 3),
        lambda_prime in prop::collection::btree_set(-7i64..=-1, 2),
        seed in 0u64..1000,
    ) {
        let lambda: Vec<i64> = lambda.into_iter().collect();
        let lambda_prime: Vec<i64> = lambda_prime.into_iter().collect();
        let pair = PairModule::tensor(&module(&lambda, 2, 0), &module(&lambda_prime, 2, 0)).unwrap();
        let p = CycloMatrix::random_unimodular(pair.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let pair = pair.conjugated(&p).unwrap();
        let l: Vec<Cyclo> = lambda.iter().map(|&x| Cyclo::from_int(x)).collect();
        let lp: Vec<Cyclo> = lambda_prime.iter().map(|&x| Cyclo::from_int(x)).collect();
        let m = p.apply(&vec![Cyclo::one(); pair.dim()]);
        let report = verify_dual_projection(&pair, &m, &l[..2], &lp).unwrap();
        prop_assert!(report.ok);
        prop_assert_eq!(report.lambda_n, l[2].clone());
    }
}
