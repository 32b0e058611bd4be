//! End-to-end runs of the installed binary: canonical invocations, exit
//! codes, machine-readable trailer lines, and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn mpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout_of(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

/// A scratch directory for files the tests feed to the binary.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mpa-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn dims_reports_the_correction_space_dimensions() {
    let out = mpa(&["dims", "--quiver", "builtin:E7"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("N=120 M=61"), "{text}");
    assert!(text.contains("#dims.N:120"));
    assert!(text.contains("#dims.M:61"));
}

#[test]
fn hh0_totals_the_multiplicative_trace_space() {
    let out = mpa(&["hh0", "--quiver", "builtin:D4", "--algebra", "mult", "--field", "F2"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("#hh0.total:4"), "{text}");
    assert!(text.contains("#hh0.domain:F2"));
}

#[test]
fn hh0_output_is_deterministic() {
    let args = ["hh0", "--quiver", "builtin:D5", "--field", "Z"];
    let first = mpa(&args);
    let second = mpa(&args);
    assert_exit(&first, 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout_of(&first).contains("#hh0.torsion:Z/2"));
}

#[test]
fn gb_reports_completion_and_dimension() {
    let out = mpa(&["gb", "--quiver", "builtin:A3", "--partial", "3"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("#gb.complete:true"), "{text}");
    assert!(text.contains("#gb.dimension:14"));
}

#[test]
fn nf_reduces_against_the_multiplicative_relations() {
    let out = mpa(&[
        "nf",
        "--quiver",
        "builtin:D4",
        "--algebra",
        "mult",
        "--poly",
        "a**a*b**b",
    ]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("#nf:c**c + b**b + a**a"));
}

#[test]
fn member_accepts_an_element_of_the_ideal() {
    let out = mpa(&[
        "member",
        "--quiver",
        "builtin:D4",
        "--algebra",
        "mult",
        "--poly",
        "a**a + b**b + c**c + c**c*b**b",
    ]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("#member:true"));
}

#[test]
fn verify_passes_the_builtin_table_and_rejects_a_bad_prime() {
    let out = mpa(&["verify", "--table", "D4"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("#verify.pass:true"), "{text}");
    assert!(text.contains("#verify.denominators:[2]"));

    let out = mpa(&["verify", "--table", "D4", "--field", "F2"]);
    assert_exit(&out, 1);
}

#[test]
fn verify_reads_a_map_file_and_reports_a_failing_relation() {
    let dir = scratch("verify");
    let map = dir.join("near_identity.txt");
    std::fs::write(
        &map,
        "arrow a -> a + a*b**b\narrow b -> b\narrow c -> c\n\
         arrow a* -> a*\narrow b* -> b*\narrow c* -> c*\n",
    )
    .unwrap();
    let out = mpa(&[
        "verify",
        "--table",
        map.to_str().unwrap(),
        "--quiver",
        "builtin:D4",
        "--truncation",
        "6",
    ]);
    assert_exit(&out, 1);
    let text = stdout_of(&out);
    assert!(text.contains("#verify.descends:false"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn apply_pushes_an_expression_through_a_map_file() {
    let dir = scratch("apply");
    let map = dir.join("twist.txt");
    std::fs::write(
        &map,
        "arrow a -> a + a*b**b\narrow b -> b\narrow c -> c\n\
         arrow a* -> a*\narrow b* -> b*\narrow c* -> c*\n",
    )
    .unwrap();
    let out = mpa(&[
        "apply",
        "--map",
        map.to_str().unwrap(),
        "--quiver",
        "builtin:D4",
        "--poly",
        "a*a*",
        "--cap",
        "6",
    ]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("#apply:a*b**b*a* + a*a*"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quiver_files_match_the_builtin_construction() {
    let dir = scratch("quiver");
    let quiver = dir.join("d4.txt");
    std::fs::write(
        &quiver,
        "vertex 1\nvertex 2\nvertex 3\nvertex 4\n\
         arrow a 1 3\narrow b 2 3\narrow c 4 3\n",
    )
    .unwrap();
    let from_file = mpa(&["dims", "--quiver", quiver.to_str().unwrap()]);
    assert_exit(&from_file, 0);
    let builtin = mpa(&["dims", "--quiver", "builtin:D4"]);
    assert_eq!(
        stdout_of(&from_file).replace(quiver.to_str().unwrap(), "builtin:D4"),
        stdout_of(&builtin)
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reproduce_runs_a_named_check_and_writes_the_report() {
    let dir = scratch("reproduce");
    let out = mpa(&[
        "reproduce",
        "--only",
        "arm-nilpotency",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("#reproduce.passed:true"), "{text}");
    assert!(text.contains("#arm-nilpotency.arms:2..8"));
    let report = std::fs::read_to_string(dir.join("reproduce.txt")).unwrap();
    assert!(report.contains("#reproduce.passed:true"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_with_code_two() {
    assert_exit(&mpa(&["dims", "--quiver", "builtin:Z9"]), 2);
    assert_exit(&mpa(&["nf", "--quiver", "builtin:D4", "--field", "F4", "--poly", "a"]), 2);
    assert_exit(&mpa(&["hh0", "--quiver", "builtin:D4", "--primes", "2,3"]), 2);
    assert_exit(&mpa(&["reproduce", "--only", "no-such-check"]), 2);
    assert_exit(&mpa(&["reproduce", "--field", "Z"]), 2);
    assert_exit(&mpa(&["verify", "--table", "no-such-file.txt"]), 2);
    assert_exit(&mpa(&["gb", "--bogus"]), 2);
}
