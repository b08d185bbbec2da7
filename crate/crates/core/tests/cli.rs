//! End-to-end runs of the binary.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermitian-lfun"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factor_json_multiplies_back() {
    let o = run(&["factor", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["unit"], "-i");
    assert_eq!(v["primes"][0]["prime"], "2+i");
    assert_eq!(v["primes"][1]["prime"], "1+2i");
}

#[test]
fn factor_csv_for_a_ramified_power() {
    let o = run(&["--output", "csv", "factor", "--", "-2i"]);
    assert_eq!(stdout(&o), "kind,value,exponent\nunit,-1,\nprime,1+i,2\n");
}

#[test]
fn verify_passes_and_reports_every_check() {
    let o = run(&[
        "--bound",
        "300",
        "verify",
        "--modulus",
        "3",
        "--weights",
        "3,4",
        "--primes",
        "2,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // 8 characters, 3 coefficient identities + 2 weights × 2 primes each
    assert_eq!(lines.len(), 8 * 7);
    assert!(lines.iter().all(|l| l["status"] == "pass"));
}

#[test]
fn corrupted_factor_fails_with_a_witness() {
    let o = run(&[
        "--bound",
        "300",
        "verify",
        "--modulus",
        "1",
        "--weights",
        "",
        "--corrupt",
        "3:2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let fail = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|l| l["status"] == "fail")
        .expect("a failing report");
    assert_eq!(fail["witness"]["coefficient"]["n"], 9);
}

#[test]
fn squared_character_two_adic_reading_fails_for_some_character() {
    let o = run(&[
        "--bound",
        "100",
        "verify",
        "--modulus",
        "3",
        "--weights",
        "",
        "--reading",
        "squared-character",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_expect_and_config() {
    let o = run(&[
        "--bound",
        "20000",
        "eval",
        "--what",
        "zeta",
        "--s",
        "2,0",
        "--expect",
        "1.6449340668482264",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let wrong = run(&[
        "--bound", "20000", "eval", "--what", "zeta", "--s", "2,0", "--expect", "1.7",
    ]);
    assert_eq!(wrong.status.code(), Some(1));

    let mut cfg = std::env::temp_dir();
    cfg.push(format!("hl-config-{}.json", std::process::id()));
    std::fs::File::create(&cfg)
        .unwrap()
        .write_all(br#"{"bound": 10, "output": "csv"}"#)
        .unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "coeffs",
        "--what",
        "zeta",
    ]);
    std::fs::remove_file(&cfg).ok();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn region_and_usage_errors() {
    let o = run(&["eval", "--what", "zeta", "--s", "0.5,0"]);
    assert_ne!(o.status.code(), Some(0));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["factor", "0"]).status.code().map(|c| c != 0),
        Some(true)
    );
}
