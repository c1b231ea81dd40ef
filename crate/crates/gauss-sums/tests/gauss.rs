use exact_arith::par::Strategy;
use exact_arith::{euler_phi, rat, Cyclo};
use gauss_sums::*;

#[test]
fn quadratic_gauss_sums_square_to_signed_prime() {
    for (p, sq) in [(3, -3), (5, 5), (7, -7), (11, -11), (13, 13)] {
        let g = gauss_sum(&MultChar::quadratic(p).unwrap()).unwrap();
        assert_eq!(&g * &g, Cyclo::from_int(sq), "p = {p}");
    }
}

#[test]
fn normalisation_by_uniformiser_value() {
    let chi = MultChar::quadratic(5).unwrap();
    let classical = classical_gauss_sum(&chi).unwrap();
    let zeta = Cyclo::root_of_unity(3, 1);
    let twisted = chi.clone().with_chi_p(zeta.clone()).unwrap();
    let g = gauss_sum(&twisted).unwrap();
    assert_eq!(&g * &zeta, classical);
}

#[test]
fn all_characters_mod_nine_satisfy_inversion() {
    let mut checked = 0;
    for chi in all_characters(3, 2).unwrap() {
        if chi.conductor_exponent() == 0 {
            assert_eq!(gauss_sum(&chi), Err(GaussError::TrivialConductor));
            continue;
        }
        let chi = chi.with_chi_p(Cyclo::root_of_unity(4, 1)).unwrap();
        let report = check_gauss(&chi).unwrap();
        assert!(report.ok(), "{report:?}");
        checked += 1;
    }
    assert_eq!(checked, 5);
}

#[test]
fn norm_identity_for_primitive_characters_up_to_27() {
    let reports = sweep_gauss(&[2, 3, 5, 7, 11, 13, 17, 19, 23], 27, Strategy::default()).unwrap();
    // primitive characters mod p^s number φ(p^s) − φ(p^{s−1}) (with p = 2, s = 1 having none)
    let expected: u64 = [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1)]
        .iter()
        .map(|&(p, s): &(u64, u32)| {
            let phi = euler_phi(p.pow(s));
            let lower = if s == 1 { 1 } else { euler_phi(p.pow(s - 1)) };
            phi - lower
        })
        .sum();
    assert_eq!(reports.len() as u64, expected);
    assert!(reports.iter().all(GaussCheck::ok));
}

#[test]
fn dual_group_has_order_phi() {
    for (p, s) in [(2, 1), (2, 2), (2, 3), (2, 5), (3, 3), (5, 2), (7, 2), (13, 1)] {
        let chars = all_characters(p, s).unwrap();
        assert_eq!(chars.len() as u64, euler_phi(p.pow(s)), "p={p} s={s}");
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }
}

#[test]
fn characteristic_two_conductors() {
    let mut by_conductor = [0usize; 4];
    for chi in all_characters(2, 3).unwrap() {
        let s = chi.conductor_exponent() as usize;
        by_conductor[s] += 1;
        if s > 0 {
            let report = check_gauss(&chi).unwrap();
            assert!(report.ok());
        }
    }
    assert_eq!(by_conductor, [1, 0, 1, 2]);
    // the character of conductor 4: τ = ζ_4 − ζ_4^3 = 2i, τ² = −4
    let chi4 = all_characters(2, 2).unwrap().into_iter().find(MultChar::is_primitive).unwrap();
    let tau = classical_gauss_sum(&chi4).unwrap();
    assert_eq!(&tau * &tau, Cyclo::from_int(-4));
}

#[test]
fn twisted_sum_examples() {
    let chi = MultChar::quadratic(3).unwrap();
    let t = twisted_sum(&chi, &rat(1, 1), 2).unwrap();
    assert!(t.direct.is_zero() && t.agrees);
    let t = twisted_sum(&chi, &rat(1, 3), 1).unwrap();
    assert_eq!(t.direct, classical_gauss_sum(&chi).unwrap());
    assert!(t.agrees);
    // level 2 scales by p^{l−s} = 3 and twists by χ^{−1}(2) = −1
    let t = twisted_sum(&chi, &rat(2, 3), 2).unwrap();
    assert_eq!(t.direct, classical_gauss_sum(&chi).unwrap().scale(&rat(-3, 1)));
    assert!(t.agrees);
    assert!(matches!(twisted_sum(&chi, &rat(1, 27), 2), Err(GaussError::InvalidParameters(_))));
    assert!(matches!(twisted_sum(&chi.at_level(2).unwrap(), &rat(1, 3), 0), Err(GaussError::LevelBelowConductor { .. })));
}

#[test]
fn twisted_sums_exhaustive_small_primes() {
    for p in [2, 3, 5] {
        let sweep = sweep_twisted(p, 2, Strategy::default()).unwrap();
        assert!(sweep.failures.is_empty(), "p = {p}: {:?}", sweep.failures.first());
        assert!(sweep.nonzero_cases > 0);
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let a = sweep_twisted(3, 2, Strategy::Sequential).unwrap();
    let b = sweep_twisted(3, 2, Strategy::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn birch_constant_exponents() {
    let chi = MultChar::quadratic(5).unwrap();
    let b2 = birch_constants(2, 1, &chi).unwrap();
    assert_eq!(b2.global_gauss_exponent, 1);
    // n = 2: N(f)^0 · N(fχ)^{−1} · τ
    assert_eq!(b2.c_global, b2.classical_gauss.scale(&rat(1, 5)));
    let b3 = birch_constants(3, 1, &MultChar::quadratic(3).unwrap()).unwrap();
    assert_eq!(b3.global_gauss_exponent, 3);
    assert_eq!(b3.local_gauss_exponent, 6);
    assert_eq!(b3.local_f_exponent, -4);
    assert_eq!(b3.global_f_exponent, -1);
    assert_eq!(delta_factor(2, 2), rat(8, 3));
    // τ² = −3 for the quadratic character mod 3, so τ^6 = −27
    assert_eq!(
        b3.c_local,
        Cyclo::from_rat(&delta_factor(3, 3) * &rat(-27, 1) * rat(1, 3i64.pow(4)) * rat(1, 3i64.pow(6)))
    );
    assert!(matches!(birch_constants(2, 0, &chi), Err(GaussError::LevelBelowConductor { .. })));
}

#[test]
fn additive_character_is_trivial_on_integers() {
    let psi = AddChar::new(5).unwrap();
    for a in -30..30 {
        assert!(psi.eval(&rat(a, 1)).unwrap().is_one());
        assert_eq!(psi.eval(&rat(a, 25)).unwrap(), root(25, a.rem_euclid(25) as u64));
    }
    assert_eq!(AddChar::new(6), Err(GaussError::NotPrime(6)));
}
