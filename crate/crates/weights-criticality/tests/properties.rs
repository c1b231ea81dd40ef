use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weights_criticality::{branch, critical_data, emb_set, random_pure};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn emb_is_an_interval_and_reflection_symmetric(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_pure(n, 6, &mut rng);
        let nu = random_pure(n - 1, 6, &mut rng);
        let d = critical_data(&mu, &nu).unwrap();
        let members: Vec<i64> = (-40..=40).filter(|&t| {
            let shifted = nu.contragredient().shift(t);
            branch(&mu).contains(&shifted)
        }).collect();
        prop_assert_eq!(emb_set(&nu, &mu).unwrap().to_vec(), members.clone());
        for t in &members {
            prop_assert!(members.contains(&(d.w + d.v - t)));
        }
        prop_assert!(d.bijection_holds);
    }
}
