use exact_arith::{rat, Cyclo};
use gauss_sums::*;
use proptest::prelude::*;

fn character() -> impl Strategy<Value = MultChar> {
    (prop::sample::select(vec![(2u64, 4u32), (3, 3), (5, 2), (7, 2), (11, 1)]), any::<prop::sample::Index>()).prop_map(
        |((p, l), idx)| {
            let all = all_characters(p, l).unwrap();
            let n = all.len();
            all.into_iter().nth(idx.index(n)).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_multiplicative(chi in character(), a in 1i64..2000, b in 1i64..2000) {
        prop_assert_eq!(chi.value(a * b), &chi.value(a) * &chi.value(b));
    }

    #[test]
    fn characters_factor_through_conductor(chi in character(), a in 1i64..2000) {
        let prim = chi.primitive();
        if a % chi.p() as i64 != 0 {
            prop_assert_eq!(prim.value(a), chi.value(a));
        }
        prop_assert!(prim.is_primitive());
    }

    #[test]
    fn additive_character_is_additive(x in -500i64..500, y in -500i64..500, dx in 0u32..4, dy in 0u32..4) {
        let psi = AddChar::new(3).unwrap();
        let a = rat(x, 3i64.pow(dx));
        let b = rat(y, 3i64.pow(dy) * 2);
        prop_assert_eq!(psi.eval(&(&a + &b)).unwrap(), &psi.eval(&a).unwrap() * &psi.eval(&b).unwrap());
    }

    #[test]
    fn twisted_sums_match_closed_form(chi in character(), num in -400i64..400, v in 0u32..5, extra in 0u32..2) {
        prop_assume!(chi.conductor_exponent() >= 1);
        let level = chi.level() + extra;
        let p = chi.p() as i64;
        let c = rat(num, p.pow(v.min(level)));
        let t = twisted_sum(&chi, &c, level).unwrap();
        prop_assert!(t.agrees, "{:?}", t);
    }

    #[test]
    fn gauss_sum_norm(chi in character()) {
        prop_assume!(chi.conductor_exponent() >= 1);
        let tau = classical_gauss_sum(&chi).unwrap();
        let ps = chi.p().pow(chi.conductor_exponent()) as i64;
        prop_assert_eq!(&tau * &tau.conj(), Cyclo::from_int(ps));
    }
}
