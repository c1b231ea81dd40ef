use exact_arith::{int, LaurentPoly, Rat, RatMatrix};
use iwahori_hecke::operators::{expand_checked, expected_count, generator};
use iwahori_hecke::relations::verify_gritsenko_with;
use iwahori_hecke::satake::verify_spherical_gl2;
use iwahori_hecke::*;
use exact_arith::par::Strategy;

const GRID: [(usize, u64); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

#[test]
fn gritsenko_factorisation_on_grid() {
    for (n, p) in GRID {
        let l = Level::new(n, p, 1).unwrap();
        let rep = verify_gritsenko(&l).unwrap();
        assert!(rep.holds, "n={n} p={p}");
        assert_eq!(rep.coefficients.len(), n + 1);
    }
}

#[test]
fn gritsenko_sequential_matches_parallel() {
    let l = Level::new(3, 2, 1).unwrap();
    let a = verify_gritsenko_with(&l, Strategy::Sequential).unwrap();
    let b = verify_gritsenko_with(&l, Strategy::Parallel).unwrap();
    let mult = |r: &iwahori_hecke::relations::GritsenkoReport| {
        r.coefficients.iter().map(|c| c.multiplicity.clone()).collect::<Vec<_>>()
    };
    assert_eq!(mult(&a), mult(&b));
    assert_eq!(mult(&a), vec!["1/1", "7/1", "14/1", "8/1"]);
}

#[test]
fn lemma_decompositions_counts_and_coverage() {
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        let l = Level::new(n, p, 1).unwrap();
        let mut tags: Vec<HeckeOperatorTag> = (0..=n).map(HeckeOperatorTag::V).collect();
        tags.extend([HeckeOperatorTag::VP, HeckeOperatorTag::VPPrime]);
        tags.extend((1..=n).map(HeckeOperatorTag::U));
        for tag in tags {
            let (sum, rep) = expand_checked(tag, &l, 200, 11).unwrap();
            assert!(rep.disjoint);
            assert_eq!(rep.samples_checked, 200);
            assert_eq!(sum.len() as u64, expected_count(tag, n, p).unwrap(), "{tag} n={n} p={p}");
        }
        for nu in 0..=n {
            let (_, rep) = expand_checked(HeckeOperatorTag::T(nu), &l, 200, 5).unwrap();
            assert_eq!(rep.samples_rejected, 0);
        }
    }
}

#[test]
fn v_p_is_product_of_v_p_nu() {
    for (n, p) in [(2, 3), (3, 2)] {
        let l = Level::new(n, p, 1).unwrap();
        let mut prod = CosetSum::unit(l);
        for nu in 1..n {
            prod = prod.convolve(&expand_operator(HeckeOperatorTag::V(nu), &l).unwrap()).unwrap();
        }
        assert!(prod.same_as(&expand_operator(HeckeOperatorTag::VP, &l).unwrap()));
        let vn = expand_operator(HeckeOperatorTag::V(n), &l).unwrap();
        let prime = vn.convolve(&prod).unwrap();
        assert!(prime.same_as(&expand_operator(HeckeOperatorTag::VPPrime, &l).unwrap()));
    }
}

#[test]
fn u1_u2_rank2() {
    let l = Level::new(2, 2, 1).unwrap();
    let u1 = expand_operator(HeckeOperatorTag::U(1), &l).unwrap();
    let u2 = expand_operator(HeckeOperatorTag::U(2), &l).unwrap();
    let prod = u1.convolve(&u2).unwrap();
    assert_eq!(prod.len(), 1);
    assert_eq!(prod.coefficient(&RatMatrix::from_i64(&[&[2, 0], &[0, 2]])), int(2));
}

#[test]
fn v_p1_squared_rank2_regression() {
    for p in [2u64, 3] {
        let l = Level::new(2, p, 1).unwrap();
        let v = expand_operator(HeckeOperatorTag::V(1), &l).unwrap();
        let sq = v.convolve(&v).unwrap();
        // p^2 distinct cosets [[p^2, a], [0, 1]], a mod p^2, each once.
        assert_eq!(sq.len() as u64, p * p);
        assert!(sq.terms().all(|(_, c)| *c == Rat::from_integer(1.into())));
    }
}

#[test]
fn commutativity_findings() {
    for (n, p) in [(2, 2), (3, 2)] {
        let l = Level::new(n, p, 1).unwrap();
        let rep = verify_commutativity(&l).unwrap();
        assert!(rep.v_commute);
        // With right cosets and upper triangular representatives the U_i do not commute;
        // only the increasing products enter the factorisation.
        assert!(!rep.u_commute);
    }
}

#[test]
fn index_counts_grid() {
    for (n, p) in GRID {
        let c = count_indices(n, p, 1, 1).unwrap();
        assert_eq!(c.unipotent_index, c.unipotent_formula, "n={n} p={p}");
        if let Some(ok) = c.step_matches() {
            assert!(ok, "n={n} p={p}");
        }
    }
    let c = count_indices(3, 2, 1, 1).unwrap();
    assert_eq!((c.unipotent_index, c.gamma_index, c.step_index), (16, 4, Some(32)));
    let c = count_indices(3, 3, 1, 1).unwrap();
    assert_eq!(c.gamma_index, 36);
}

#[test]
fn satake_display_up_to_rank_four() {
    for n in 1..=4 {
        for nu in 0..=n {
            let s = satake(nu, n).unwrap();
            assert!(s.is_symmetric());
            let q = SymPoly::q().pow((nu * (nu + 1) / 2) as i64).unwrap();
            assert_eq!(s.poly, &q * &SymPoly::elementary(n, nu));
        }
    }
}

#[test]
fn spherical_gl2_relations() {
    for p in [2u64, 3, 5] {
        let rep = verify_spherical_gl2(p).unwrap();
        assert!(rep.hecke_relation_holds);
        assert!(rep.integral_multiplicative);
        let q = SymPoly::q();
        let (x1, x2) = (SymPoly::x(1), SymPoly::x(2));
        let q2 = q.pow(2).unwrap();
        let mixed = &(&(&q2 * &LaurentPoly::from_int(2)) - &q.pow(3).unwrap()) - &q.pow(4).unwrap();
        let expect = &(&q2 * &(&(&x1 * &x1) + &(&x2 * &x2))) + &(&mixed * &(&x1 * &x2));
        assert_eq!(rep.display_t20.poly, expect);
        let pq = Rat::from_integer(p.into());
        let int_expect = SymPoly::new(2, &(&q2 * &(&(&x1 * &x1) + &(&x2 * &x2))) + &(&(&q2 - &q) * &(&x1 * &x2)))
            .eval_q(&pq);
        assert_eq!(rep.integral_t20, int_expect);
    }
}

#[test]
fn shintani_degree() {
    for n in 2..=4 {
        let alpha: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(&format!("a{i}"))).collect();
        let beta: Vec<LaurentPoly> = (0..n - 1).map(|i| LaurentPoly::var(&format!("b{i}"))).collect();
        let l = shintani_lfactor(&alpha, &beta).unwrap();
        let t = exact_arith::Var::new("T");
        let deg = l.terms().map(|(m, _)| m.exponent(t)).max().unwrap();
        assert_eq!(deg as usize, n * (n - 1));
    }
}

#[test]
fn generator_shapes() {
    let g = generator(HeckeOperatorTag::VPPrime, 3, 2).unwrap();
    assert_eq!(g, RatMatrix::from_i64(&[&[8, 0, 0], &[0, 4, 0], &[0, 0, 2]]));
    assert!(expand_operator(HeckeOperatorTag::U(4), &Level::new(3, 2, 1).unwrap()).is_err());
}
