//! End-to-end tests of the command-line binary: exit-code contract
//! (0 pass / 1 failed checks / 2 bad input), report wording, artifact
//! round trips, and byte-determinism.

use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cybe"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn validate_passes_on_the_nilpotent_example() {
    let (code, stdout, _) = run(&["validate", &data("heisenberg.json")]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("jacobi: ok"));
    assert!(stdout.contains("verdict: PASS"));
}

#[test]
fn validate_fails_with_witness_on_broken_jacobi() {
    let (code, stdout, _) = run(&["validate", &data("sl2_bad_jacobi.json")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("jacobi: FAIL"), "stdout: {stdout}");
    assert!(stdout.contains("first at"), "witness missing: {stdout}");
}

#[test]
fn malformed_and_missing_inputs_exit_2() {
    let (code, _, stderr) = run(&["validate", &data("truncated.json")]);
    assert_eq!(code, 2, "stderr: {stderr}");
    assert!(stderr.contains("malformed JSON"));

    let (code, _, _) = run(&["validate", &data("no_such_file.json")]);
    assert_eq!(code, 2);

    let (code, _, stderr) = run(&[
        "constant",
        "check",
        "--eq",
        "9.9",
        &data("sl2.json"),
        &data("sl2_neg_projection.json"),
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown equation"));
}

#[test]
fn validate_reports_rep_and_form_properties() {
    let (code, stdout, _) = run(&[
        "validate",
        &data("heisenberg.json"),
        "--rep",
        &data("heisenberg_rep_trivial.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("representation: ok"));
    // The tensor is reported, not judged: it is a valid dual-pairing
    // tensor even though it is degenerate and not form-invariant.
    assert!(stdout.contains("ad-invariant as tensor true"));
    assert!(stdout.contains("nondegenerate false"));
}

#[test]
fn rep_command_validates_a_representation() {
    let (code, stdout, _) = run(&[
        "rep",
        &data("heisenberg.json"),
        &data("heisenberg_rep_trivial.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: PASS"));
}

#[test]
fn op_check_passes_the_family_operator_and_flags_the_mutant() {
    let (code, stdout, _) = run(&["op", "check", &data("heisenberg.json"), &data("heisenberg_T.json")]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("main identity: ok"));
    assert!(stdout.contains("unitarity sum: ok"));

    let (code, stdout, _) = run(&["op", "check", &data("heisenberg.json"), &data("mutated_T.json")]);
    assert_eq!(code, 1);
    assert!(
        stdout.contains("main identity: FAIL") && stdout.contains("first at"),
        "witness missing: {stdout}"
    );
}

#[test]
fn op_check_verdicts_do_not_depend_on_the_window() {
    for file in ["heisenberg_T.json", "mutated_T.json"] {
        let narrow = run(&[
            "op", "check", &data("heisenberg.json"), &data(file), "--window", "3",
        ]);
        let wide = run(&[
            "op", "check", &data("heisenberg.json"), &data(file), "--window", "5",
        ]);
        assert_eq!(narrow.0, wide.0, "{file}: exit codes differ between windows");
        let verdict = |s: &str| {
            s.lines()
                .find(|l| l.starts_with("verdict:"))
                .map(str::to_string)
        };
        assert_eq!(verdict(&narrow.1), verdict(&wide.1), "{file}: verdicts differ");
    }
}

#[test]
fn op_check_rejects_a_kind_mismatch() {
    let (code, _, stderr) = run(&[
        "op", "check", &data("heisenberg.json"), &data("heisenberg_T.json"), "--kind", "adjoint",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("declares kind"));
}

#[test]
fn op_check_runs_the_reduced_variant() {
    let (code, stdout, _) = run(&[
        "op", "check", &data("heisenberg.json"), &data("heisenberg_T.json"), "--kind", "reduced",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("kind: reduced"));
}

#[test]
fn build_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json").display().to_string();
    let (code, stdout, _) = run(&[
        "build", "--example", "heisenberg", "--lambda1", "1", "--lambda2", "1", "-o", &out,
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("wrote"));

    let (code, stdout, _) = run(&["verify", &out, "--numeric-samples", "5", "--seed", "11"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("numerator support: empty"));
    assert!(stdout.contains("unitarity: pass"));
    assert_eq!(stdout.matches(": agree").count(), 5);
}

#[test]
fn build_from_theorem_flags_and_operator_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json").display().to_string();

    // Bilinear-form construction with the default Killing form and no
    // operator file: the pole-only candidate on sl2.
    let (code, _, _) = run(&["build", "--theorem", "2", &data("sl2.json"), "-o", &out]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["verify", &out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("nondegenerate: true"));

    // Dual-pairing construction from the family operator file.
    let (code, _, _) = run(&[
        "build", "--theorem", "3", &data("heisenberg.json"), &data("heisenberg_T.json"), "-o", &out,
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["verify", &out]);
    assert_eq!(code, 0);

    // The doubled variant scales pole and blocks by 2.
    let (code, _, _) = run(&[
        "build", "--theorem", "eq422", &data("heisenberg.json"), &data("heisenberg_T.json"), "-o",
        &out,
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["verify", &out]);
    assert_eq!(code, 0);

    // A mutated operator file is refused: exit 1, nothing written.
    let refused = dir.path().join("refused.json");
    let (code, _, stderr) = run(&[
        "build", "--theorem", "3", &data("heisenberg.json"), &data("mutated_T.json"), "-o",
        refused.display().to_string().as_str(),
    ]);
    assert_eq!(code, 1, "stderr: {stderr}");
    assert!(stderr.contains("refused"), "stderr: {stderr}");
    assert!(!refused.exists(), "refused build must not write an artifact");

    // --force emits it anyway, and verify then fails on it.
    let (code, _, _) = run(&[
        "build", "--theorem", "3", &data("heisenberg.json"), &data("mutated_T.json"), "--force",
        "-o", refused.display().to_string().as_str(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["verify", refused.display().to_string().as_str()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("first violation"), "stdout: {stdout}");
}

#[test]
fn verify_prints_the_first_violation_of_a_bad_candidate() {
    let (code, stdout, _) = run(&["verify", &data("bad_r.json")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("numerator support:"), "stdout: {stdout}");
    assert!(stdout.contains("first violation at"), "stdout: {stdout}");
    assert!(stdout.contains("verdict: FAIL"));
}

#[test]
fn verify_resolves_algebra_file_references() {
    let (code, stdout, _) = run(&["verify", &data("heisenberg_r_ref.json")]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("numerator support: empty"));
}

#[test]
fn cobracket_applies_the_induced_map() {
    let (code, stdout, _) = run(&[
        "cobracket", &data("heisenberg_r_ref.json"), "--element", "2*e1*u^0 - e3*u^-1",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("e3 (x) e3"));
}

#[test]
fn double_writes_a_reloadable_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("double.json").display().to_string();
    let (code, stdout, _) = run(&["double", &data("aff1.json"), "-o", &out]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("pairing invariant: ok"));

    let (code, stdout, _) = run(&["validate", &out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dim 4"));
    assert!(stdout.contains("invariant as form true"));
}

#[test]
fn op_search_recovers_the_grid_from_a_pattern_file() {
    let (code, stdout, _) = run(&[
        "op", "search", &data("heisenberg.json"), "--kind", "coadjoint", "--pattern",
        &data("pattern_heisenberg.json"), "--tensor", "t",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("found 9 operator(s)"));
}

#[test]
fn op_search_respects_the_candidate_budget() {
    let (code, _, stderr) = run(&[
        "op", "search", &data("heisenberg.json"), "--kind", "coadjoint", "--pattern",
        &data("pattern_heisenberg.json"), "--tensor", "t", "--budget", "10",
    ]);
    assert_eq!(code, 1, "stderr: {stderr}");
    assert!(stderr.contains("budget"), "stderr: {stderr}");

    // The environment variable caps the budget even when a generous
    // --budget is passed.
    let out = Command::new(env!("CARGO_BIN_EXE_cybe"))
        .args([
            "op", "search", &data("heisenberg.json"), "--kind", "coadjoint", "--pattern",
            &data("pattern_heisenberg.json"), "--tensor", "t", "--budget", "1000000",
        ])
        .env("CYBE_MAX_CANDIDATES", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn constant_checks_run_each_identity() {
    let (code, stdout, _) = run(&[
        "constant", "check", "--eq", "5.2", &data("sl2.json"), &data("sl2_neg_projection.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: PASS"));

    let (code, stdout, _) = run(&[
        "constant", "check", "--eq", "5.5", &data("sl2.json"), &data("sl2_neg_projection.json"),
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("jacobi: ok"));

    let (code, _, _) = run(&[
        "constant", "check", "--eq", "1.5", &data("sl2.json"), &data("sl2_R_f_to_e.json"),
    ]);
    assert_eq!(code, 0);

    let (code, stdout, _) = run(&[
        "constant", "check", "--eq", "1.7", &data("heisenberg.json"), &data("zero_map_3x1.json"),
        "--rep", &data("heisenberg_rep_trivial.json"),
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");

    // The Casimir fails the plain constant tensor equation (exit 1) but
    // the report names the modified verdict that holds.
    let (code, stdout, _) = run(&[
        "constant", "check", "--eq", "5.4", &data("sl2.json"), &data("sl2_R_f_to_e.json"),
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("tensor equation"), "stdout: {stdout}");
}

#[test]
fn json_mode_emits_machine_readable_reports() {
    let (code, stdout, _) = run(&["--json", "validate", &data("heisenberg.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["dim"], serde_json::Value::from(3));

    let (code, stdout, _) = run(&[
        "--json", "op", "check", &data("heisenberg.json"), &data("mutated_T.json"),
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    assert_eq!(v["pass"], serde_json::Value::Bool(false));
    assert_eq!(v["report"]["main"]["pass"], serde_json::Value::Bool(false));
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["validate", &data("heisenberg.json")],
        vec!["op", "search", &data("heisenberg.json"), "--kind", "coadjoint", "--pattern",
             &data("pattern_heisenberg.json"), "--tensor", "t"],
        vec!["verify", &data("heisenberg_r_ref.json"), "--numeric-samples", "4"],
    ] {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        let first = run(&refs);
        let second = run(&refs);
        assert_eq!(first, second, "non-deterministic output for {owned:?}");
    }
}

#[test]
fn emitted_artifacts_reload_to_equal_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json").display().to_string();
    let (code, _, _) = run(&[
        "build", "--example", "heisenberg", "--lambda1", "2", "--lambda2", "-3", "-o", &out,
    ]);
    assert_eq!(code, 0);

    // Reload through the library and compare against the direct build.
    let reloaded = cybe::format::load_rmatrix(std::path::Path::new(&out)).unwrap();
    let (_, _, _, direct) = cybe::constructors::heisenberg_family(
        &cybe::scalar::Scalar::rational(2, 1),
        &cybe::scalar::Scalar::rational(-3, 1),
    );
    assert_eq!(reloaded, direct);
}
