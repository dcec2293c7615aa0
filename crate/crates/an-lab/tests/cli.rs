//! Black-box tests of the `an-lab` binary: exit codes, byte-deterministic
//! output, and the export/classify pipeline.

use std::path::Path;
use std::process::{Command, Output};

use an_lab::witness::WitnessPlan;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_an-lab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("AN_LAB_PRECISION")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr is UTF-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("write test file");
    path.to_str().expect("UTF-8 path").to_string()
}

const RAMESH_JSON: &str =
    r#"{"atoms":[{"value":"1/2","multiplicity":1},{"value":1,"multiplicity":"inf"}],"tails":[]}"#;

const RAMESH_VERDICT: &str = r#"{"satisfied":true,"reason":"FiniteRankPlusScalar","decomposition":{"alpha":1,"alpha_infinite":true,"alpha_multiplicity":0,"F":[["-1/2",1]],"K_atoms":[],"K_tail":null},"witness":null}"#;

const RAMESH_DECOMPOSITION: &str = r#"{"alpha":1,"alpha_infinite":true,"alpha_multiplicity":0,"F":[["-1/2",1]],"K_atoms":[],"K_tail":null}"#;

#[test]
fn classify_satisfied_spectrum_exits_zero_with_pinned_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "ramesh.json", RAMESH_JSON);

    let text = run(&["classify", &spec]);
    assert_eq!(code(&text), 0);
    assert_eq!(
        stdout(&text),
        "satisfied: true\nreason: FiniteRankPlusScalar\nalpha: 1\n"
    );

    let json = run(&["classify", &spec, "--json"]);
    assert_eq!(code(&json), 0);
    assert_eq!(stdout(&json), format!("{RAMESH_VERDICT}\n"));

    // Byte determinism across runs.
    let again = run(&["classify", &spec, "--json"]);
    assert_eq!(stdout(&json), stdout(&again));
}

#[test]
fn classify_not_satisfied_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(
        dir.path(),
        "two-limit.json",
        r#"{"tails":[
            {"limit":1,"direction":"decreasing","rule":{"type":"harmonic","c":"1/2","p":1}},
            {"limit":2,"direction":"decreasing","rule":{"type":"harmonic","c":1,"p":1}}
        ]}"#,
    );
    let out = run(&["classify", &spec]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("satisfied: false"));
    assert!(stdout(&out).contains("reason: Fail_TwoLimitPoints"));
    assert!(stdout(&out).contains("witness: TwoLimitPoints"));
}

#[test]
fn classify_norming_reports_attaining_value() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "ramesh.json", RAMESH_JSON);
    let out = run(&["classify", &spec, "--norming"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "satisfied: true\nattaining value: 1\n");

    let increasing = write_file(
        dir.path(),
        "increasing.json",
        r#"{"tails":[{"limit":2,"direction":"increasing","rule":{"type":"harmonic","c":1,"p":1}}]}"#,
    );
    let out = run(&["classify", &increasing, "--norming"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout(&out), "satisfied: false\nattaining value: none\n");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.json", "{ not json");
    for subcommand in ["classify", "decompose", "witness"] {
        let out = run(&[subcommand, &bad]);
        assert_eq!(code(&out), 2, "{subcommand} on malformed input");
        assert!(stderr(&out).starts_with("error:"));
    }
    let missing = dir.path().join("missing.json");
    let out = run(&["classify", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let invalid_schema = write_file(
        dir.path(),
        "schema.json",
        r#"{"atoms":[{"value":-1,"multiplicity":1}],"tails":[]}"#,
    );
    let out = run(&["classify", &invalid_schema]);
    assert_eq!(code(&out), 2);
}

#[test]
fn decompose_emits_pinned_json_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "ramesh.json", RAMESH_JSON);

    let out = run(&["decompose", &spec, "--verify"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), format!("{RAMESH_DECOMPOSITION}\n"));
    assert!(stderr(&out).contains("round-trip: ok"));

    let out_path = dir.path().join("d.json");
    let out = run(&["decompose", &spec, "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        format!("{RAMESH_DECOMPOSITION}\n")
    );
}

#[test]
fn decompose_refuses_unsatisfiable_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(
        dir.path(),
        "increasing.json",
        r#"{"tails":[{"limit":2,"direction":"increasing","rule":{"type":"harmonic","c":1,"p":1}}]}"#,
    );
    let out = run(&["decompose", &spec]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("Fail_IncreasingApproach"));
    assert_eq!(stdout(&out), "");
}

#[test]
fn witness_on_satisfied_spectrum_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "ramesh.json", RAMESH_JSON);
    let out = run(&["witness", &spec]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("no witness applicable"));
    assert_eq!(stdout(&out), "");
}

#[test]
fn witness_emits_plan_json_and_basis_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(
        dir.path(),
        "projection.json",
        r#"{"atoms":[{"value":0,"multiplicity":"inf"},{"value":1,"multiplicity":"inf"}],"tails":[]}"#,
    );

    let plan_out = run(&["witness", &spec]);
    assert_eq!(code(&plan_out), 0);
    let plan = WitnessPlan::from_json_str(stdout(&plan_out).trim_end()).expect("plan parses");
    plan.validate_up_to(100).expect("plan is internally exact");

    let csv_out = run(&["witness", &spec, "--emit-basis", "2"]);
    assert_eq!(code(&csv_out), 0);
    assert_eq!(
        stdout(&csv_out),
        "n,c_n_squared,f_index,g_index\n1,3/4,0,1\n2,7/16,2,3\n"
    );

    let csv_path = dir.path().join("basis.csv");
    let file_out = run(&[
        "witness",
        &spec,
        "--emit-basis",
        "2",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&file_out), 0);
    assert_eq!(
        std::fs::read_to_string(&csv_path).unwrap(),
        stdout(&csv_out)
    );

    let zero = run(&["witness", &spec, "--emit-basis", "0"]);
    assert_eq!(code(&zero), 2);
}

#[test]
fn verify_writes_truncation_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(
        dir.path(),
        "two-limit.json",
        r#"{"tails":[
            {"limit":1,"direction":"decreasing","rule":{"type":"harmonic","c":"1/2","p":1}},
            {"limit":2,"direction":"decreasing","rule":{"type":"harmonic","c":1,"p":1}}
        ]}"#,
    );
    let out = run(&["verify", &spec, "--truncate", "10,50"]);
    assert_eq!(code(&out), 0);
    let expected = "N,restricted_norm,sup_value,gap\n\
                    10,1.975000000000e+00,2.000000000000e+00,2.500000000000e-02\n\
                    50,1.995000000000e+00,2.000000000000e+00,5.000000000000e-03\n";
    assert_eq!(stdout(&out), expected);

    let again = run(&["verify", &spec, "--truncate", "10,50"]);
    assert_eq!(stdout(&again), expected);

    let report = dir.path().join("report.csv");
    let out = run(&[
        "verify",
        &spec,
        "--truncate",
        "10,50",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), expected);

    // A satisfied spectrum reports zero gap on every truncation.
    let ramesh = write_file(dir.path(), "ramesh.json", RAMESH_JSON);
    let out = run(&["verify", &ramesh, "--truncate", "3,5"]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines().skip(1) {
        assert!(line.ends_with(",0.000000000000e+00"), "line {line}");
    }

    let bad = run(&["verify", &spec, "--truncate", "5,5"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn matrix_check_runs_explicit_matrices_and_suites() {
    let dir = tempfile::tempdir().unwrap();
    let hermitian = write_file(dir.path(), "h.csv", "1,0\n0,2\n");
    let out = run(&["matrix-check", "--matrix", &hermitian, "--suite", "negcount"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "check: negcount\ncount: 0\nbound: 0\nresult: PASS\n"
    );

    let non_hermitian = write_file(dir.path(), "nh.csv", "0,1\n0,0\n");
    let out = run(&[
        "matrix-check",
        "--matrix",
        &non_hermitian,
        "--suite",
        "negcount",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not hermitian"));

    let out = run(&["matrix-check", "--matrix", &non_hermitian, "--suite", "polar"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("check: polar"));
    assert!(stdout(&out).contains("result: PASS"));

    let complex = write_file(dir.path(), "c.csv", "1+1i,0\n0,2-3i\n");
    let out = run(&["matrix-check", "--matrix", &complex]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("rows: 2\ncols: 2\noperator norm: 3.605551275464e+00\n"));

    let subspace = write_file(dir.path(), "v.csv", "1,0\n0,0\n0,1\n");
    let diag3 = write_file(dir.path(), "d3.csv", "1,0,0\n0,3,0\n0,0,2\n");
    let out = run(&[
        "matrix-check",
        "--matrix",
        &diag3,
        "--subspace",
        &subspace,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "ambient dimension: 3\nsubspace dimension: 2\nrestricted norm: 2.000000000000e+00\noperator norm: 3.000000000000e+00\n"
    );

    let ragged = write_file(dir.path(), "ragged.csv", "1,2\n3\n");
    let out = run(&["matrix-check", "--matrix", &ragged]);
    assert_eq!(code(&out), 2);
}

#[test]
fn matrix_check_suites_are_seeded_and_deterministic() {
    let out = run(&[
        "matrix-check",
        "--suite",
        "polar",
        "--dim",
        "4",
        "--trials",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(&format!("seed: {}", 0x414E_3050u64)));
    assert!(text.contains("result: PASS"));

    let again = run(&[
        "matrix-check",
        "--suite",
        "polar",
        "--dim",
        "4",
        "--trials",
        "5",
    ]);
    assert_eq!(stdout(&again), text);

    let reseeded = run(&[
        "matrix-check",
        "--suite",
        "polar",
        "--dim",
        "4",
        "--trials",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&reseeded), 0);
    assert!(stdout(&reseeded).contains("seed: 7"));

    for suite in ["absval", "norming", "negcount"] {
        let out = run(&[
            "matrix-check",
            "--suite",
            suite,
            "--dim",
            "4",
            "--trials",
            "5",
        ]);
        assert_eq!(code(&out), 0, "suite {suite}");
        assert!(stdout(&out).contains("result: PASS"), "suite {suite}");
    }
}

#[test]
fn precision_env_overrides_reporting_tolerance_only() {
    let out = run_with_env(
        &[
            "matrix-check",
            "--suite",
            "absval",
            "--dim",
            "3",
            "--trials",
            "3",
        ],
        "AN_LAB_PRECISION",
        "1e-2",
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("tolerance: 1.000000000000e-02"));

    // The polar suite tolerance is a solver bound, not the reporting
    // tolerance; it must not move.
    let out = run_with_env(
        &[
            "matrix-check",
            "--suite",
            "polar",
            "--dim",
            "3",
            "--trials",
            "3",
        ],
        "AN_LAB_PRECISION",
        "1e-2",
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("tolerance: 1.000000000000e-09"));

    let out = run_with_env(
        &["matrix-check", "--suite", "absval"],
        "AN_LAB_PRECISION",
        "not-a-number",
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn models_list_show_export_pipeline() {
    let list = run(&["models", "list"]);
    assert_eq!(code(&list), 0);
    assert_eq!(
        stdout(&list),
        "ramesh-counterexample\ntwo-limit-blocks\nisometry-phase\nsum-not-an\nprojection-infinite\n"
    );

    let show = run(&["models", "show", "ramesh-counterexample"]);
    assert_eq!(code(&show), 0);
    let text = stdout(&show);
    assert!(text.starts_with("name: ramesh-counterexample\nkind: spectrum\n"));
    assert!(text.contains("provenance: "));
    assert!(text.contains(&format!("spec: {RAMESH_JSON}")));

    let unknown = run(&["models", "show", "nope"]);
    assert_eq!(code(&unknown), 2);

    // Export/classify pipeline gives the same verdict as classifying the
    // inline spec directly.
    let dir = tempfile::tempdir().unwrap();
    let exported = dir.path().join("exported.json");
    let export = run(&["models", "export", "ramesh-counterexample", exported.to_str().unwrap()]);
    assert_eq!(code(&export), 0);
    let via_export = run(&["classify", exported.to_str().unwrap(), "--json"]);
    let direct_file = write_file(dir.path(), "direct.json", RAMESH_JSON);
    let direct = run(&["classify", &direct_file, "--json"]);
    assert_eq!(code(&via_export), 0);
    assert_eq!(stdout(&via_export), stdout(&direct));

    // The diagonal model flows through the same pipeline.
    let iso = dir.path().join("iso.json");
    let export = run(&["models", "export", "isometry-phase", iso.to_str().unwrap()]);
    assert_eq!(code(&export), 0);
    let verdict = run(&["classify", iso.to_str().unwrap()]);
    assert_eq!(code(&verdict), 0);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["classify"]);
    assert_eq!(code(&out), 2);
    let out = run(&["matrix-check"]);
    assert_eq!(code(&out), 2);
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "whatever.json"]);
    assert_eq!(code(&out), 2);
}
