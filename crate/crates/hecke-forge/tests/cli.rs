use std::path::Path;
use std::process::{Command, Output};

use distributions::{build_mu, Class, EigenSymbol, RayTower};
use exact_arith::Cyclo;
use hecke_forge::fixtures::case_rng;
use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-forge"))
        .args(args)
        .env_remove("HECKE_FORGE_SEED")
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("invalid JSON line {l:?}: {e}")))
        .collect()
}

fn without_timing(mut v: Vec<Value>) -> Vec<Value> {
    for r in &mut v {
        r.as_object_mut().unwrap().remove("timing_ms");
    }
    v
}

fn cyclo(v: &Value) -> (u64, Vec<String>) {
    let m = v["m"].as_u64().unwrap();
    let coeffs = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
    (m, coeffs)
}

#[test]
fn quadratic_gauss_sum_squares_to_five() {
    let out = forge(&["gauss-sum", "--p", "5", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = &lines(&out)[0];
    assert_eq!(cyclo(&v["square"]), (1, vec!["5/1".to_string()]));
    assert_eq!(v["ok"], true);
    let (m, coeffs) = cyclo(&v["gauss_sum"]);
    // Q(ζ_10) = Q(ζ_5): either conductor is a valid home for G(χ)
    assert!(m == 5 || m == 10, "conductor {m}");
    assert!(coeffs.iter().all(|c| c.parse::<i64>().is_ok() || c.contains('/')));
}

#[test]
fn critical_emb_of_gl3_pairs() {
    // (1+ν, −1+ν) must interlace μ
    for (mu, emb) in [("1,0,-1", serde_json::json!([0])), ("3,1,-1", serde_json::json!([0, 1, 2]))] {
        let out = forge(&["critical", "--mu", mu, "--nu", "1,-1"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = &lines(&out)[0];
        assert_eq!(v["emb"], emb, "mu = {mu}");
        let in_table: Vec<Value> =
            v["table"].as_array().unwrap().iter().filter(|r| r["in_emb"] == true).map(|r| r["nu"].clone()).collect();
        assert_eq!(Value::from(in_table), emb);
    }
}

#[test]
fn hecke_expand_lists_cosets() {
    let out = forge(&["hecke-expand", "--n", "2", "--p", "2", "--op", "V1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = &lines(&out)[0];
    assert_eq!(v["count"], 2);
    assert_eq!(v["expected"], 2);
    let cosets = v["cosets"].as_array().unwrap();
    assert_eq!(cosets.len(), 2);
    for c in cosets {
        assert!(c["matrix"].is_array() && c.get("coefficient").is_some());
    }
}

#[test]
fn other_subcommands_emit_json() {
    for args in [
        &["satake", "--n", "3", "--nu", "2"][..],
        &["branch", "--mu", "2,0,-2"],
        &["kappa-hat", "--n", "3", "--p", "3", "--order", "2", "--nu", "1", "--kappa", "2"],
        &["integrate", "--p", "3", "--level", "2", "--index", "1"],
    ] {
        let out = forge(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(lines(&out).len(), 1, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(forge(&["--jobs", "0"]).status.code(), Some(2));
    assert_eq!(forge(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(forge(&["--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(forge(&["satake", "--n", "2", "--nu", "5"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "seed = 1\nnot_a_key = 3\n").unwrap();
    assert_eq!(forge(&["--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(forge(&["--config", "/nonexistent/forge.conf"]).status.code(), Some(2));
}

fn write_fixture(path: &Path, corrupt: bool) {
    let tower = RayTower::rational(3).unwrap();
    let sym = EigenSymbol::random(tower, Cyclo::from_int(2), 3, vec![0], 9, &mut case_rng(11, "fixture")).unwrap();
    let mut mu = build_mu(&sym, 1).unwrap();
    if corrupt {
        let x = Class::unit(2);
        let v = vec![&mu.value(2, x).unwrap()[0] + &Cyclo::from_int(1)];
        mu.set_value(2, x, v).unwrap();
    }
    std::fs::write(path, serde_json::to_string_pretty(&mu).unwrap()).unwrap();
}

#[test]
fn corrupted_fixture_fails_exactly_once() {
    let dir = tempfile::tempdir().unwrap();
    for (corrupt, code, fails) in [(false, 0, 0), (true, 1, 1)] {
        let fixture = dir.path().join(format!("mu-{corrupt}.json"));
        write_fixture(&fixture, corrupt);
        let cfg = dir.path().join(format!("forge-{corrupt}.conf"));
        std::fs::write(&cfg, format!("# distributions only\nsuites = distributions\ndistribution_fixture = {}\n", fixture.display())).unwrap();
        let out = forge(&["--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
        let reports = lines(&out);
        let failed: Vec<_> = reports.iter().filter(|r| r["status"] == "fail").collect();
        assert_eq!(failed.len(), fails, "{failed:?}");
        if corrupt {
            assert_eq!(failed[0]["case"], "fixture-relation");
            assert!(failed[0]["witness"]["report"]["witness"].is_object());
        }
    }
}

#[test]
fn fixed_seed_is_deterministic_and_json_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("run.jsonl");
    let a = forge(&["--seed", "5", "--suite", "weights", "gauss", "--json-out", out_file.to_str().unwrap()]);
    let b = forge(&["--seed", "5", "--suite", "weights", "gauss", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(lines(&a)), without_timing(lines(&b)));
    assert_eq!(std::fs::read(&out_file).unwrap(), a.stdout);
    for r in lines(&a) {
        for key in ["suite", "case", "status", "witness", "timing_ms"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
    }
}

#[test]
fn seed_from_environment_and_flag_precedence() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hecke-forge"));
        cmd.args(["--suite", "weights"]).args(args).env_remove("HECKE_FORGE_SEED");
        if let Some(s) = env {
            cmd.env("HECKE_FORGE_SEED", s);
        }
        without_timing(lines(&cmd.output().unwrap()))
    };
    let flag9 = run(None, &["--seed", "9"]);
    assert_eq!(run(Some("9"), &[]), flag9);
    assert_eq!(run(Some("4"), &["--seed", "9"]), flag9);
    assert_ne!(run(Some("4"), &[]), flag9);
}
