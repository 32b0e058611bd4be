//! End-to-end acceptance: every named check in the reproduction suite must
//! pass. One test per check keeps the verdicts independently visible; each
//! prints a single pass/fail line (with the detail lines indented under it)
//! so the full run reads as a checklist.

use mpa_core::reproduce::{run_check, SuiteOptions, CHECK_NAMES};

fn run(name: &str) {
    let report = run_check(name, &SuiteOptions::default()).unwrap();
    println!(
        "{}: {} ({:.2}s)",
        report.name,
        if report.passed { "pass" } else { "FAIL" },
        report.seconds
    );
    for line in &report.details {
        println!("    {line}");
    }
    assert!(report.passed, "check {name} failed:\n{}", report.details.join("\n"));
}

#[test]
fn check_list_is_complete() {
    assert_eq!(CHECK_NAMES.len(), 11);
}

#[test]
fn central_relations() {
    run("central-relations");
}

#[test]
fn arm_nilpotency() {
    run("arm-nilpotency");
}

#[test]
fn two_loop_basis() {
    run("two-loop-basis");
}

#[test]
fn hh0_field_totals() {
    run("hh0-field-totals");
}

#[test]
fn hh0_integer_torsion() {
    run("hh0-integer-torsion");
}

#[test]
fn hh0_obstructions() {
    run("hh0-obstructions");
}

#[test]
fn hh0_integral_identities() {
    run("hh0-integral-identities");
}

#[test]
fn correction_dims() {
    run("correction-dims");
}

#[test]
fn isomorphism_tables() {
    run("isomorphism-tables");
}

#[test]
fn negative_control() {
    run("negative-control");
}

#[test]
fn random_properties() {
    run("random-properties");
}
