//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line.  Criteria run at their stated tolerances against the seeded
//! corpora in `logfree::verify`; criterion 12 (CLI determinism) lives in
//! the CLI crate's acceptance target.

use logfree::verify::{self, CheckResult};
use std::time::Instant;

fn report(criterion: &str, budget_secs: Option<f64>, check: CheckResult, started: Instant) {
    let elapsed = started.elapsed().as_secs_f64();
    let status = if check.passed { "PASS" } else { "FAIL" };
    println!("[{status}] {criterion}: {} ({elapsed:.2}s)", check.detail);
    if let Some(budget) = budget_secs {
        assert!(
            elapsed < budget,
            "{criterion} took {elapsed:.2}s, budget {budget}s"
        );
    }
    assert!(check.passed, "{criterion}: {}", check.detail);
}

#[test]
fn criterion_01_cauchy_identity_equivalence() {
    let t = Instant::now();
    report(
        "1 Cauchy-identity equivalence",
        Some(10.0),
        verify::check_cauchy_oracle(7),
        t,
    );
}

#[test]
fn criterion_02_ramified_assembly() {
    let t = Instant::now();
    report("2 ramified assembly", Some(30.0), verify::check_ramified_assembly(7), t);
}

#[test]
fn criterion_03_conductor_bounds() {
    let t = Instant::now();
    report("3 conductor bounds", Some(5.0), verify::check_conductor_bounds(7), t);
}

#[test]
fn criterion_04_gram_identity() {
    let t = Instant::now();
    report("4 Gram identity", Some(20.0), verify::check_gram_identity(7), t);
}

#[test]
fn criterion_05_sphere_lemma() {
    let t = Instant::now();
    report("5 sphere lemma", Some(5.0), verify::check_sphere_lemma(7), t);
}

#[test]
fn criterion_06_sos_turan() {
    let t = Instant::now();
    report("6 power-sum certification", Some(5.0), verify::check_sos_turan(7), t);
}

#[test]
fn criterion_07_selberg_sieve() {
    let t = Instant::now();
    report("7 Selberg sieve", None, verify::check_selberg_sieve(), t);
}

#[test]
fn criterion_08_jk_bound_and_micro_inequalities() {
    let t = Instant::now();
    report("8 j_k bound and micro-inequalities", None, verify::check_jk_and_micro(), t);
}

#[test]
fn criterion_09_chebotarev_exactness() {
    let t = Instant::now();
    report("9 Chebotarev exactness", Some(30.0), verify::check_chebotarev_exactness(), t);
}

#[test]
fn criterion_10_eta_closed_form() {
    let t = Instant::now();
    report("10 eta closed form vs grid", None, verify::check_eta_closed_form(7), t);
}

#[test]
fn criterion_11_zero_counting() {
    let t = Instant::now();
    report("11 zero counting", None, verify::check_zero_count(), t);
}
