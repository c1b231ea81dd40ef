//! Acceptance run: one `criterion k: PASS|FAIL` line per criterion, with pinned time limits.
//!
//! Run with `cargo test -p hecke-forge --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use exact_arith::par::Strategy;
use exact_arith::{rat, Cyclo, LaurentPoly, Rat, Var};
use gauss_sums::{gauss_sum, sweep_gauss, sweep_twisted, MultChar};
use gln_matrices::{verify_epimorphism, verify_inverseh, GlnContext, XValue};
use hecke_forge::fixtures::case_rng;
use hecke_forge::{contragredient_check, projection_sweep, run_suite, Report, Status, Suite, SuiteConfig, Summary};
use hecke_modules::verify_recisums;
use iwahori_hecke::operators::{expand_checked, expected_count};
use iwahori_hecke::satake::verify_spherical_gl2;
use iwahori_hecke::{count_indices, satake, shintani_lfactor, verify_gritsenko, HeckeOperatorTag, Level, SymPoly};
use rand::Rng;

const SEED: u64 = 2024;
const HECKE_GRID: [(usize, u64); 3] = [(2, 2), (2, 3), (3, 2)];

// Time limits per criterion (or per case where the criterion says so).
const GRITSENKO_LIMIT: Duration = Duration::from_secs(60);
const INDEX_LIMIT: Duration = Duration::from_secs(120);
const GAUSS_LIMIT: Duration = Duration::from_secs(30);
const END_TO_END_LIMIT: Duration = Duration::from_secs(600);
const DEFAULT_LIMIT: Duration = Duration::from_secs(300);

struct Outcome {
    k: u32,
    pass: bool,
}

fn criterion(k: u32, limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let pass = ok && elapsed <= limit;
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {k}: {verdict} — {detail} [{:.2} s, limit {} s]", elapsed.as_secs_f64(), limit.as_secs());
    Outcome { k, pass }
}

fn suite_only(suite: Suite) -> Vec<Report> {
    run_suite(&SuiteConfig { seed: SEED, suites: vec![suite], ..SuiteConfig::default() })
}

fn all_pass(reports: &[Report], prefix: &str) -> (bool, usize) {
    let selected: Vec<_> = reports.iter().filter(|r| r.case.starts_with(prefix)).collect();
    (!selected.is_empty() && selected.iter().all(|r| r.status == Status::Pass), selected.len())
}

fn c1() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in HECKE_GRID {
        let start = Instant::now();
        let rep = verify_gritsenko(&Level::new(n, p, 1).unwrap()).unwrap();
        let within = start.elapsed() <= GRITSENKO_LIMIT;
        ok &= rep.holds && within;
        parts.push(format!("(n={n},p={p}) {}", if rep.holds { "holds" } else { "differs" }));
    }
    (ok, format!("Hecke polynomial factorisation by coset expansion: {}", parts.join(", ")))
}

fn c2() -> (bool, String) {
    let mut ok = true;
    let mut operators = 0;
    for (n, p) in HECKE_GRID {
        let level = Level::new(n, p, 1).unwrap();
        let mut tags: Vec<_> = (1..=n).map(HeckeOperatorTag::V).collect();
        tags.push(HeckeOperatorTag::VP);
        for (i, tag) in tags.into_iter().enumerate() {
            let (sum, rep) = expand_checked(tag, &level, 200, SEED + i as u64).unwrap();
            ok &= Some(sum.len() as u64) == expected_count(tag, n, p) && rep.disjoint && rep.samples_checked == 200;
            operators += 1;
        }
    }
    (ok, format!("{operators} operators: coset counts exact, disjoint, 200 coverage samples each with 0 failures"))
}

fn c3() -> (bool, String) {
    let mut literal_ok = true;
    let mut structural_ok = true;
    let mut parts = Vec::new();
    for n in [2usize, 3] {
        for p in [2u64, 3] {
            let c = count_indices(n, p, 1, 1).unwrap();
            structural_ok &= c.unipotent_index == c.unipotent_formula && c.step_matches() != Some(false);
            literal_ok &= c.gamma_index == c.gamma_formula;
            let step = c.step_index.map_or("not enumerated".to_string(), |s| s.to_string());
            parts.push(format!(
                "(n={n},p={p}) unipotent {}={}, step {step} vs {}, absolute Γ-index {} vs {}",
                c.unipotent_index, c.unipotent_formula, c.step_formula, c.gamma_index, c.gamma_formula
            ));
        }
    }
    // The unipotent formula and the level-to-level step agree; the absolute index of the
    // literal Γ-formula does not (see the ledger), so the criterion as stated fails.
    assert!(structural_ok, "unipotent or step index disagrees: {parts:?}");
    (literal_ok, parts.join("; "))
}

fn c4() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2usize, 3] {
        let (pass, w) = projection_sweep(n, 100, SEED, Strategy::default()).unwrap();
        ok &= pass;
        parts.push(format!(
            "n={n}: {} modules, {} idempotence / {} equivariance / {} image failures",
            w["modules"], w["idempotent_failures"], w["equivariance_failures"], w["image_failures"]
        ));
    }
    (ok, parts.join("; "))
}

fn c5() -> (bool, String) {
    let mut ok = true;
    let mut recip = 0;
    for n in [2usize, 3] {
        let (_, w) = projection_sweep(n, 100, SEED, Strategy::default()).unwrap();
        recip += w["reciprocity_failures"].as_u64().unwrap();
    }
    ok &= recip == 0;
    let sums = verify_recisums(20);
    ok &= sums;
    let mut constants = Vec::new();
    for n in [2usize, 3] {
        let (pass, w) = contragredient_check(n).unwrap();
        ok &= pass;
        constants.push(format!("C(n={n}) = {}", serde_json::to_string(&w["constant"]).unwrap()));
    }
    (ok, format!("dual-root reciprocity failures {recip}; root sums n ≤ 20: {sums}; {}", constants.join(", ")))
}

fn c6() -> (bool, String) {
    let mut ok = true;
    for n in 3..=5 {
        ok &= verify_inverseh(&GlnContext::symbolic(n, 2, 1).unwrap(), &XValue::Symbolic).unwrap().passed();
    }
    let mut rng = case_rng(SEED, "acceptance-inverseh");
    for _ in 0..10 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(1..=2u32);
        let x = loop {
            let (a, b) = (rng.gen_range(1i64..50), rng.gen_range(1i64..50));
            if a % p as i64 != 0 && b % p as i64 != 0 {
                break rat(a, b);
            }
        };
        let ctx = GlnContext::numeric(rng.gen_range(3..=5), p, r, r + 1).unwrap();
        ok &= verify_inverseh(&ctx, &XValue::Unit(x)).unwrap().passed();
    }
    let mut surjective = 0;
    for (n, p) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
        let rep = verify_epimorphism(&GlnContext::numeric(n, p, 1, 1).unwrap()).unwrap();
        ok &= rep.surjective;
        surjective += usize::from(rep.surjective);
    }
    (ok, format!("symbolic n=3..5, 10 numeric samples, epimorphism surjective on {surjective}/4 grid points"))
}

fn c7() -> (bool, String) {
    let g5 = gauss_sum(&MultChar::quadratic(5).unwrap()).unwrap();
    let g3 = gauss_sum(&MultChar::quadratic(3).unwrap()).unwrap();
    let squares = &g5 * &g5 == Cyclo::from_int(5) && &g3 * &g3 == Cyclo::from_int(-3);
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23];
    let checks = sweep_gauss(&primes, 27, Strategy::default()).unwrap();
    let norms_ok = checks.iter().all(|c| c.ok());
    let (mut cases, mut failures) = (0, 0);
    for p in primes {
        let max_level = (1..).take_while(|&l| p.pow(l) <= 27).last().unwrap();
        let sweep = sweep_twisted(p, max_level, Strategy::default()).unwrap();
        cases += sweep.cases;
        failures += sweep.failures.len();
    }
    (
        squares && norms_ok && failures == 0,
        format!("G² = 5 and −3: {squares}; {} primitive characters with p^s ≤ 27; {cases} twisted sums, {failures} mismatches", checks.len()),
    )
}

fn c8() -> (bool, String) {
    let reports = suite_only(Suite::Weights);
    let ok = reports.iter().all(|r| r.status == Status::Pass);
    let pairs = reports.iter().find(|r| r.case == "critical-random-pairs").map(|r| r.witness["pairs"].clone());
    (ok, format!("{} cases pass over {} random pairs and the GL₂ closed form", reports.len(), pairs.unwrap_or_default()))
}

fn c9() -> (bool, String) {
    let reports = suite_only(Suite::Distributions);
    let (relation, nr) = all_pass(&reports, "relation-");
    let (fourier, nf) = all_pass(&reports, "fourier-inversion-");
    let (unit, _) = all_pass(&reports, "boundedness-unit-kappa");
    let (slope, _) = all_pass(&reports, "boundedness-slope-one-detected");
    (
        relation && fourier && unit && slope,
        format!("relation {relation} ({nr} towers), Fourier inversion on C(p²) {fourier} ({nf} primes), unit-κ bounded {unit}, slope-one failure detected {slope}"),
    )
}

fn c10() -> (bool, String) {
    let reports = suite_only(Suite::FunctionalEquation);
    let ok = !reports.is_empty() && reports.iter().all(|r| r.status == Status::Pass);
    let corrupted = reports.iter().filter(|r| r.witness["corruption_detected"] == true).count();
    (ok, format!("{} dual-pair cases incl. τ_ν ↦ τ_−ν and the κ relation; corruption detected in {corrupted}", reports.len()))
}

fn c11() -> (bool, String) {
    let mut ok = true;
    for n in 1..=4usize {
        for nu in 0..=n {
            let s = satake(nu, n).unwrap();
            let q = SymPoly::q().pow((nu * (nu + 1) / 2) as i64).unwrap();
            ok &= s.is_symmetric() && s.poly == &q * &SymPoly::elementary(n, nu);
        }
    }
    let q = SymPoly::q();
    let (x1, x2) = (SymPoly::x(1), SymPoly::x(2));
    let q2 = q.pow(2).unwrap();
    // regression: S(T₁)² − (q+1)S(T₂) in the displayed normalisation
    let mixed = &(&(&q2 * &LaurentPoly::from_int(2)) - &q.pow(3).unwrap()) - &q.pow(4).unwrap();
    let locked = &(&q2 * &(&(&x1 * &x1) + &(&x2 * &x2))) + &(&mixed * &(&x1 * &x2));
    for p in [2u64, 3, 5] {
        let rep = verify_spherical_gl2(p).unwrap();
        let integral = SymPoly::new(2, &(&q2 * &(&(&x1 * &x1) + &(&x2 * &x2))) + &(&(&q2 - &q) * &(&x1 * &x2)))
            .eval_q(&Rat::from_integer(p.into()));
        ok &= rep.hecke_relation_holds && rep.integral_multiplicative && rep.display_t20.poly == locked && rep.integral_t20 == integral;
    }
    let t = Var::new("T");
    let mut degrees = Vec::new();
    for n in 2..=4usize {
        let a: Vec<_> = (0..n).map(|i| LaurentPoly::var(&format!("a{i}"))).collect();
        let b: Vec<_> = (0..n - 1).map(|i| LaurentPoly::var(&format!("b{i}"))).collect();
        let l = shintani_lfactor(&a, &b).unwrap();
        let deg = l.terms().map(|(m, _)| m.exponent(t)).max().unwrap();
        ok &= deg as usize == n * (n - 1);
        degrees.push(deg);
    }
    (ok, format!("Satake display n ≤ 4, GL₂ T₁*T₁ relation and locked transform for p ∈ {{2,3,5}}, Shintani degrees {degrees:?}"))
}

fn c12() -> (bool, String) {
    let cfg = SuiteConfig { seed: SEED, ..SuiteConfig::default() };
    let first = run_suite(&cfg);
    let second = run_suite(&cfg);
    let summary = Summary::of(&first);
    let untimed = |rs: &[Report]| rs.iter().map(|r| r.untimed().to_json_line()).collect::<Vec<_>>();
    let deterministic = untimed(&first) == untimed(&second);
    (
        summary.ok() && deterministic,
        format!(
            "default run: {} pass, {} fail, {} xfail, {} skip; identical reports on rerun: {deterministic}",
            summary.pass, summary.fail, summary.xfail, summary.skip
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let outcomes = vec![
        criterion(1, GRITSENKO_LIMIT * HECKE_GRID.len() as u32, c1),
        criterion(2, DEFAULT_LIMIT, c2),
        criterion(3, INDEX_LIMIT, c3),
        criterion(4, DEFAULT_LIMIT, c4),
        criterion(5, DEFAULT_LIMIT, c5),
        criterion(6, DEFAULT_LIMIT, c6),
        criterion(7, GAUSS_LIMIT, c7),
        criterion(8, DEFAULT_LIMIT, c8),
        criterion(9, DEFAULT_LIMIT, c9),
        criterion(10, DEFAULT_LIMIT, c10),
        criterion(11, DEFAULT_LIMIT, c11),
        criterion(12, END_TO_END_LIMIT, c12),
    ];
    // Criterion 3 is a documented deviation: the absolute Γ-index is not the stated power of N(f).
    let known_failures = [3];
    let unexpected: Vec<u32> = outcomes.iter().filter(|o| !o.pass && !known_failures.contains(&o.k)).map(|o| o.k).collect();
    let fixed: Vec<u32> = outcomes.iter().filter(|o| o.pass && known_failures.contains(&o.k)).map(|o| o.k).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    assert!(fixed.is_empty(), "criteria {fixed:?} now pass; update the ledger and the known-failure list");
}
