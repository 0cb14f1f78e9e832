//! End-to-end tests of the `symp` binary: exit codes, table shapes,
//! JSON round-trips, and byte-for-byte determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn symp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

const KT_MODEL: &str = "# symp-model v1\n\
dim 4\n\
d e4 = 1 * e2^e3\n\
omega = 1 * e1^e2 + 1 * e3^e4\n";

#[test]
fn validate_exit_codes() {
    let good = write_temp("kt-good.model", KT_MODEL);
    let out = symp(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Degenerate omega: parses but fails the nondegeneracy invariant.
    let degenerate = write_temp(
        "degenerate.model",
        "# symp-model v1\ndim 4\nomega = 1 * e1^e2\n",
    );
    let out = symp(&["validate", degenerate.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));

    // Out-of-range coframe index: parse error.
    let bad = write_temp(
        "bad-index.model",
        "# symp-model v1\ndim 4\nd e9 = 1 * e1^e2\nomega = 1 * e1^e2 + 1 * e3^e4\n",
    );
    let out = symp(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn cohomology_table_matches_expected_dimensions() {
    let out = symp(&[
        "cohomology",
        "--builtin",
        "kt",
        "--kinds",
        "all",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("H_d          1    3    4    3    1"),
        "{text}"
    );
    assert!(
        text.contains("H_dΛ         1    3    4    3    1"),
        "{text}"
    );
    assert!(
        text.contains("H_d+dΛ       1    3    5    3    1"),
        "{text}"
    );
    assert!(
        text.contains("H_ddΛ        1    3    5    3    1"),
        "{text}"
    );
    assert!(
        text.contains("H_d∩dΛ       1    2    4    2    1"),
        "{text}"
    );
}

#[test]
fn cohomology_torus_and_primitive() {
    let out = symp(&["cohomology", "--builtin", "torus2", "--kinds", "d"]);
    let text = stdout(&out);
    assert!(
        text.contains("H_d          1    4    6    4    1"),
        "{text}"
    );

    let out = symp(&[
        "cohomology",
        "--builtin",
        "kt",
        "--kinds",
        "d+dl",
        "--primitive",
    ]);
    let text = stdout(&out);
    assert!(text.contains("PH_d+dΛ      1    3    4"), "{text}");
}

#[test]
fn cohomology_json_roundtrip() {
    let out = symp(&[
        "cohomology",
        "--builtin",
        "kt",
        "--kinds",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["model"]["name"], "kt");
    assert_eq!(json["model"]["dim"], 4);
    assert!(json["inputHash"].as_str().unwrap().len() == 16);

    let expect: &[(&str, [u64; 5])] = &[
        ("d", [1, 3, 4, 3, 1]),
        ("dl", [1, 3, 4, 3, 1]),
        ("d+dl", [1, 3, 5, 3, 1]),
        ("ddl", [1, 3, 5, 3, 1]),
        ("dcapdl", [1, 2, 4, 2, 1]),
    ];
    let results = json["results"].as_array().unwrap();
    for (kind, dims) in expect {
        for (k, want) in dims.iter().enumerate() {
            let found = results
                .iter()
                .find(|r| r["kind"] == *kind && r["degree"] == k as u64)
                .unwrap_or_else(|| panic!("missing {kind} degree {k}"));
            assert_eq!(found["dim"].as_u64().unwrap(), *want, "{kind} degree {k}");
        }
    }
}

#[test]
fn check_verdicts() {
    let out = symp(&["check", "--builtin", "kt", "--test", "ddl-lemma"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "verdicts are data, not exit codes"
    );
    let text = stdout(&out);
    assert!(text.contains("verdict: fails"));
    assert!(
        text.contains("e2^e3"),
        "the degree-2 witness class is printed: {text}"
    );

    let out = symp(&["check", "--builtin", "torus2", "--test", "ddl-lemma"]);
    assert!(stdout(&out).contains("verdict: holds"));

    let out = symp(&[
        "check",
        "--builtin",
        "kt",
        "--test",
        "strong-lefschetz",
        "--kind",
        "d",
    ]);
    assert!(stdout(&out).contains("verdict: fails"));
    let out = symp(&[
        "check",
        "--builtin",
        "kt",
        "--test",
        "strong-lefschetz",
        "--kind",
        "d+dl",
    ]);
    assert!(stdout(&out).contains("verdict: holds"));

    // Without --kind the check covers all five kinds in one run; the dΛ
    // kind uses the conjugate Lefschetz map and fails on kt like d does.
    let out = symp(&["check", "--builtin", "kt", "--test", "strong-lefschetz"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("verdict:").count(), 5, "{text}");
    assert_eq!(text.matches("verdict: holds").count(), 3, "{text}");

    let out = symp(&[
        "check",
        "--builtin",
        "kt",
        "--test",
        "pairing",
        "--degree",
        "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("verdict: holds"));
    assert!(text.contains("3×3"), "{text}");

    let out = symp(&["check", "--builtin", "kt", "--test", "no-such-test"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_examples() {
    let out = symp(&["decompose", "--builtin", "kt", "--form", "e1^e2 + e3^e4"]);
    let text = stdout(&out);
    assert!(text.contains("r=1: B_0 = 1"), "{text}");
    assert!(text.contains("recomposition: exact"));

    let out = symp(&["decompose", "--builtin", "kt", "--form", "e1^e2"]);
    let text = stdout(&out);
    assert!(text.contains("B_2 = 1/2 * e1^e2 - 1/2 * e3^e4"), "{text}");
    assert!(text.contains("B_0 = 1/2"), "{text}");

    let out = symp(&["decompose", "--builtin", "kt", "--form", "e1"]);
    assert!(stdout(&out).contains("r=0: B_1 = e1"));

    let out = symp(&["decompose", "--builtin", "kt", "--form", "e1 + ?"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "cohomology",
        "--builtin",
        "kt",
        "--kinds",
        "all",
        "--harmonic",
        "--format",
        "json",
    ];
    let a = stdout(&symp(&args));
    let b = stdout(&symp(&args));
    assert_eq!(a, b);

    let args = [
        "identity-suite",
        "--backend",
        "invariant",
        "--seed",
        "42",
        "--cases",
        "5",
    ];
    let a = stdout(&symp(&args));
    let b = stdout(&symp(&args));
    assert_eq!(
        a, b,
        "identity-suite must be byte-identical for a fixed seed"
    );
    assert!(a.contains("total:"));
    assert!(!a.contains("FAIL"), "{a}");
}

#[test]
fn harmonic_output_is_lambda_independent() {
    let base = [
        "cohomology",
        "--builtin",
        "kt",
        "--kinds",
        "d+dl",
        "--harmonic",
        "--format",
        "json",
    ];
    let with = |lambda: &str| {
        let mut args: Vec<&str> = base.to_vec();
        args.extend(["--lambda", lambda]);
        stdout(&symp(&args))
    };
    let one = with("1");
    assert_eq!(one, with("7"));
    assert_eq!(one, with("1/3"));
    // Nonpositive lambda is a usage error.
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--lambda", "0"]);
    let out = symp(&args);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn identity_suite_poly_small() {
    let out = symp(&[
        "identity-suite",
        "--backend",
        "poly",
        "--seed",
        "7",
        "--cases",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("backend=poly seed=7 cases=3"));
    assert!(!text.contains("FAIL"), "{text}");

    let out = symp(&["identity-suite", "--backend", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_j_model_supports_harmonic_output() {
    // Non-orthogonal omega plus an explicit J: the general-metric path
    // (g = diag(2,2,1,1)) must still satisfy harmonic = cohomology,
    // which the binary cross-checks internally before printing.
    let path = write_temp(
        "kt-scaled.model",
        "# symp-model v1\n\
         dim 4\n\
         d e4 = 1 * e2^e3\n\
         omega = 2 * e1^e2 + 1 * e3^e4\n\
         J = 0 1 0 0; -1 0 0 0; 0 0 0 1; 0 0 -1 0\n",
    );
    let out = symp(&[
        "cohomology",
        path.to_str().unwrap(),
        "--kinds",
        "all",
        "--harmonic",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(
        text.contains("H_d+dΛ       1    3    5    3    1"),
        "{text}"
    );

    // Without J the same omega is refused (coframe matrix not orthogonal).
    let path = write_temp(
        "kt-scaled-noj.model",
        "# symp-model v1\n\
         dim 4\n\
         d e4 = 1 * e2^e3\n\
         omega = 2 * e1^e2 + 1 * e3^e4\n",
    );
    let out = symp(&[
        "cohomology",
        path.to_str().unwrap(),
        "--kinds",
        "d",
        "--harmonic",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("orthogonal"), "stderr: {err}");
}

#[test]
fn builtin_list() {
    let out = symp(&["builtin", "--list"]);
    let text = stdout(&out);
    assert!(text.contains("kt"));
    assert!(text.contains("torus3"));
}

#[test]
fn model_file_flows_through_cohomology() {
    let path = write_temp("kt-flow.model", KT_MODEL);
    let out = symp(&["cohomology", path.to_str().unwrap(), "--kinds", "dcapdl"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1    2    4    2    1"));

    // A file that parses but violates an invariant is refused.
    let path = write_temp(
        "invalid-flow.model",
        "# symp-model v1\ndim 4\nd e1 = 1 * e2^e3\nd e3 = 1 * e1^e4\nomega = 1 * e1^e2 + 1 * e3^e4\n",
    );
    let out = symp(&["cohomology", path.to_str().unwrap(), "--kinds", "d"]);
    assert_eq!(out.status.code(), Some(1));
}
