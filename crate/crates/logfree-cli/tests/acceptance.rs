//! Acceptance criterion 12: determinism and exit codes of the binary.

use std::process::Command;
use std::time::Instant;

fn logfree() -> Command {
    Command::new(env!("CARGO_BIN_EXE_logfree"))
}

#[test]
fn criterion_12_verify_all_determinism() {
    let started = Instant::now();
    let dir = std::env::temp_dir();
    let first = dir.join("logfree-acceptance-report-1.json");
    let second = dir.join("logfree-acceptance-report-2.json");
    for path in [&first, &second] {
        let status = logfree()
            .args(["verify-all", "--seed", "7", "--emit"])
            .arg(path)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("binary runs");
        assert!(status.success(), "verify-all must exit 0");
    }
    let a = std::fs::read(&first).expect("first report");
    let b = std::fs::read(&second).expect("second report");
    assert_eq!(a, b, "reports must be byte-identical");
    let elapsed = started.elapsed().as_secs_f64();
    println!("[PASS] 12 verify-all determinism: byte-identical, exit 0 ({elapsed:.2}s)");
    assert!(elapsed < 180.0, "two verify-all runs took {elapsed:.2}s, budget 180s");
}

#[test]
fn usage_errors_exit_two() {
    let out = logfree().arg("--definitely-not-a-flag").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let out = logfree().arg("no-such-subcommand").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_embed_seed_and_version() {
    let out = logfree()
        .args(["rs-coeffs", "--n", "2", "--p", "5", "--r", "3", "--seed", "1"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    assert_eq!(value["meta"]["seed"], 1);
    assert_eq!(value["meta"]["artifact"], "logfree");
    assert!(value["meta"]["version"].is_string());
    assert_eq!(value["within_tolerance"], true);
}

#[test]
fn zeros_count_cli_matches_bundled_table() {
    let out = logfree()
        .args(["zeros", "count", "--sigma", "0.5", "--T", "100"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    assert_eq!(value["count"], 58);
}

#[test]
fn negative_discriminants_parse() {
    let out = logfree()
        .args(["chebotarev", "--d", "-163", "--class", "split", "--x", "1000"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    assert!(value["report"]["pi_c"].as_u64().unwrap() > 0);
}

#[test]
fn chebotarev_csv_report_schema() {
    let path = std::env::temp_dir().join("logfree-acceptance-cheb.csv");
    let status = logfree()
        .args(["chebotarev", "--q", "4", "--class", "1", "--x", "100", "--report"])
        .arg(&path)
        .stdout(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    assert!(status.success());
    let text = std::fs::read_to_string(&path).expect("CSV written");
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("x,pi_C,expected,E_C,grh_bound,quasi_grh_bound")
    );
    let row: Vec<&str> = lines.next().expect("one data row").split(',').collect();
    assert_eq!(row[1], "11"); // pi_C(100; q=4, a=1)
}
