use distributions::*;
use exact_arith::par::Strategy;
use exact_arith::{rat, Cyclo};
use gauss_sums::all_characters;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn symbol(p: u64, h: u64, kappa: i64, depth: u32, seed: u64) -> EigenSymbol {
    let tower = RayTower::new(p, h).unwrap();
    EigenSymbol::random(tower, Cyclo::from_int(kappa), depth, vec![0, 1], 7, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn build_mu_is_a_distribution(p in prop::sample::select(vec![2u64, 3, 5]), h in 1u64..3, kappa in prop::sample::select(vec![-3i64, -1, 1, 2, 5]), seed in any::<u64>()) {
        let depth = if p == 5 { 2 } else { 3 };
        let mu = build_mu(&symbol(p, h, kappa, depth, seed), 1).unwrap();
        let rep = check_distribution_relation(&mu).unwrap();
        prop_assert!(rep.ok, "{:?}", rep.witness);
    }

    #[test]
    fn integration_is_level_stable(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>(), idx in any::<prop::sample::Index>()) {
        let mu = build_mu(&symbol(p, 1, 2, 3, seed), 1).unwrap();
        let chars = all_characters(p, 2).unwrap();
        let chi = chars[idx.index(chars.len())].clone();
        let a = integrate_at(&mu, &chi.clone().into(), 2).unwrap();
        prop_assert!(a.level_stable);
        let b = integrate_character(&mu, &chi.into()).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn fourier_inversion_holds(p in prop::sample::select(vec![2u64, 3]), h in 1u64..3, seed in any::<u64>(), idx in any::<prop::sample::Index>()) {
        let mu = build_mu(&symbol(p, h, 3, 3, seed), 1).unwrap();
        let classes = mu.tower().classes(2);
        let x0 = classes[idx.index(classes.len())];
        prop_assert!(fourier_inversion(&mu, 2, x0, Strategy::Sequential).unwrap().ok);
    }

    #[test]
    fn kappa_hat_exponent_audit(n in 2usize..8, shift in 0i64..5, k in 1i64..6) {
        let chi = gauss_sums::MultChar::quadratic(3).unwrap();
        let kh = kappa_hat(&InterpolationInput::new(chi, shift, 0, Cyclo::from_int(k)), n).unwrap();
        prop_assert!(kh.audit_ok());
        prop_assert_eq!(kh.kappa_exponent, -1);
    }

    #[test]
    fn inverse_kappa_relation(n in 2usize..4, l in prop::collection::vec(prop::sample::select(vec![-3i64, -1, 1, 2, 5, 7]), 5), q in prop::sample::select(vec![2i64, 3, 5])) {
        let lambda: Vec<Cyclo> = l[..n].iter().map(|&x| Cyclo::from_int(x)).collect();
        let lambda_prime: Vec<Cyclo> = l[n..2 * n - 1].iter().map(|&x| Cyclo::from_int(x)).collect();
        let e = DualEigenData::from_roots(&lambda, &lambda_prime, &rat(q, 1)).unwrap();
        for m in 1..4 {
            prop_assert!(e.relation_holds(m));
        }
    }

    #[test]
    fn vee_is_an_involution(p in prop::sample::select(vec![2u64, 3, 5, 7]), m in 1u32..4, n in 2usize..6, h in 1u64..4, seed in any::<u64>()) {
        let tower = RayTower::new(p, h).unwrap();
        let classes = tower.classes(m);
        let x = classes[(seed % classes.len() as u64) as usize];
        let y = tower.vee(x, m, n);
        prop_assert!(tower.is_class(y, m));
        prop_assert_eq!(tower.vee(y, m, n), x);
        if m > 1 {
            prop_assert_eq!(tower.reduce(y, m - 1), tower.vee(tower.reduce(x, m - 1), m - 1, n));
        }
    }
}
