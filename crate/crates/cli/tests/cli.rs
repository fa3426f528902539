//! End-to-end tests of the `orjsj` binary: golden JSON reports, text output
//! for every subcommand, exit codes, and batch/stdin aggregation.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orjsj"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin written");
    child.wait_with_output().expect("binary exits")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Parse a JSON report and zero the timing fields, which are the only
/// run-to-run variance in the output.
fn normalized(raw: &str) -> serde_json::Value {
    let mut doc: serde_json::Value = serde_json::from_str(raw).expect("valid json");
    if let Some(timing) = doc.get_mut("timing_ms").and_then(|t| t.as_object_mut()) {
        for (_, v) in timing.iter_mut() {
            *v = serde_json::json!(0.0);
        }
    }
    doc
}

#[test]
fn analyze_reports_match_the_golden_files() {
    for (input, golden) in [
        ("(AABaab)^2", "AABaab_squared.json"),
        ("(aabbABAB)^2", "aabbABAB_squared.json"),
        ("(abAB)^2", "abAB_squared.json"),
    ] {
        let out = run(&[
            "analyze",
            input,
            "--assume-hyperbolic",
            "--assume-rg",
            "--format",
            "json",
        ]);
        assert_eq!(code(&out), 0, "analyze {input}: {}", stderr(&out));
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(golden);
        let want: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file"))
                .expect("golden json");
        assert_eq!(normalized(&stdout(&out)), want, "report for {input}");
    }
}

#[test]
fn json_reports_keep_a_stable_field_order() {
    let out = run(&["analyze", "(AABaab)^2", "--format", "json"]);
    let text = stdout(&out);
    let keys = [
        "\"input\"",
        "\"relator\"",
        "\"root\"",
        "\"exponent\"",
        "\"exponent_sums\"",
        "\"applicability\"",
        "\"polytope\"",
        "\"detection\"",
        "\"decomposition\"",
        "\"out_class\"",
        "\"warnings\"",
        "\"timing_ms\"",
    ];
    let mut last = 0;
    for key in keys {
        let pos = text.find(key).unwrap_or_else(|| panic!("missing {key}"));
        assert!(pos >= last, "{key} out of order");
        last = pos;
    }
}

#[test]
fn detect_prints_yes_or_no() {
    let out = run(&["detect", "AABaab", "--assume-rg"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "yes\n");

    let out = run(&["detect", "(aabbABAB)^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "no\n");
}

#[test]
fn detect_without_hypotheses_is_inapplicable() {
    let out = run(&["detect", "AABaab"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).is_empty());
    assert!(
        stderr(&out).contains("unknown: hyperbolicity/RG not asserted"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn jsj_prints_the_splitting() {
    let out = run(&["jsj", "(AABaab)^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "HNN: base <a, y | (x^-2 y^2)^2>, stable letter b, attaching y = b^-1 a b, representative AABaab\n"
    );

    let out = run(&["jsj", "(abAB)^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "trivial: single vertex, no edges, vertex group G\n"
    );

    let out = run(&["jsj", "a"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn out_names_the_three_outer_classes() {
    for (input, want) in [
        ("(abAB)^3", "GL2(Z)\n"),
        ("(AABaab)^2", "virtually-Z\n"),
        ("(aabbABAB)^2", "finite\n"),
    ] {
        let out = run(&["out", input]);
        assert_eq!(code(&out), 0, "out {input}: {}", stderr(&out));
        assert_eq!(stdout(&out), want, "out {input}");
    }
}

#[test]
fn polytope_formats() {
    let out = run(&["polytope", "aabbABAB"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "class: 2d\nvertices: (0,0) (1,0) (1,1)\n");

    let out = run(&["polytope", "aabbABAB", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["class"], "2d");
    assert_eq!(doc["vertices"], serde_json::json!([[0, 0], [1, 0], [1, 1]]));

    let out = run(&["polytope", "aabbABAB", "--format", "svg"]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    assert!(svg.starts_with("<?xml"), "svg header");
    assert_eq!(svg.matches("ft-vertex").count(), 3, "one marker per vertex");
}

#[test]
fn polytope_rejects_words_outside_the_derived_subgroup() {
    let out = run(&["polytope", "ab"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("ab"));
}

#[test]
fn svg_is_only_available_for_polytope() {
    let out = run(&["detect", "aabbABAB", "--format", "svg"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
}

#[test]
fn minimize_and_orbit_match_the_library() {
    let word = orjsj_core::parse_word("abb").expect("parses");
    let core = orjsj_core::CyclicWord::from_word(&word);
    let (minimal, _) = orjsj_core::minimize(&core);

    let out = run(&["minimize", "abb"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), format!("{minimal}\n"));
    assert_eq!(minimal.len(), 1);

    let orbit = orjsj_core::shortest_orbit_set(&orjsj_core::CyclicWord::from_word(
        &orjsj_core::parse_word("AABaab").expect("parses"),
    ))
    .expect("orbit");
    let out = run(&["orbit", "AABaab"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some(format!("min length: {}", orbit.min_length()).as_str())
    );
    let members: Vec<&str> = lines.collect();
    assert_eq!(members, orbit.to_strings());
}

#[test]
fn parse_errors_use_exit_code_two() {
    for bad in ["a^", "(ab", "abc", "a!", "(abAB)^0", "<a,c | ab>"] {
        let out = run(&["analyze", bad]);
        assert_eq!(code(&out), 2, "input {bad:?}");
        assert!(!stderr(&out).is_empty(), "input {bad:?} should explain");
    }
}

#[test]
fn triage_rejections_use_exit_code_three_but_still_report() {
    let out = run(&["analyze", "a"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("applicability: NotOneEnded"));
    assert!(stderr(&out).contains("free product"));

    let out = run(&["analyze", "ab"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("applicability: Unsupported"));

    let out = run(&["analyze", "(abAB)^2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("applicability: FuchsianCase"));
    assert!(text.contains("decomposition: trivial (single vertex, no edges, vertex group G)"));
    assert!(text.contains("out class:     GL2Z"));
}

#[test]
fn presentation_syntax_is_accepted() {
    let out = run(&["detect", "<a,b | (aabbABAB)^2>"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "no\n");

    let out = run(&["detect", "⟨a, b | AABaab⟩", "--assume-rg"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "yes\n");
}

#[test]
fn batch_runs_every_line_and_reports_the_worst_failure() {
    let dir = std::env::temp_dir().join(format!("orjsj-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let batch = dir.join("batch.txt");
    std::fs::write(&batch, "a\n(AABaab)^2\n\nab\n").expect("batch file");

    let out = run(&[
        "analyze",
        "--batch",
        batch.to_str().expect("utf-8 path"),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 3, "worst failure is inapplicable");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "one record per non-empty line");
    for line in &lines {
        let doc: serde_json::Value = serde_json::from_str(line).expect("ndjson record");
        assert!(doc.get("applicability").is_some());
    }

    // A malformed line outranks the inapplicable ones, and the good lines
    // are still processed.
    std::fs::write(&batch, "zzz\n(AABaab)^2\na\n").expect("batch file");
    let out = run(&[
        "analyze",
        "--batch",
        batch.to_str().expect("utf-8 path"),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(
        stdout(&out).lines().count(),
        2,
        "parse failure emits no record"
    );
    assert!(stderr(&out).contains("zzz"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn stdin_is_read_when_no_relator_is_given() {
    let out = run_with_stdin(&["detect"], "(aabbABAB)^2\n(aabbABAB)^3\n");
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "no\nno\n");

    let out = run_with_stdin(&["detect"], "\n\n");
    assert_eq!(code(&out), 2, "no usable input lines");
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = std::env::temp_dir().join(format!("orjsj-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("verdict.txt");

    let out = run(&[
        "detect",
        "(aabbABAB)^2",
        "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).expect("written"), "no\n");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_orbit_cap_warns_and_falls_back() {
    let out = bin()
        .env("ORJSJ_ORBIT_CAP", "zero")
        .args(["minimize", "abb"])
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("ORJSJ_ORBIT_CAP"));
    assert!(!stdout(&out).is_empty());
}

#[test]
fn oracle_subcommand_reports_agreement() {
    let out = run(&["oracle", "--max-length", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["max_length"], 4);
    assert_eq!(doc["disagreements"], serde_json::json!([]));
    assert_eq!(doc["classes_checked"], 50, "classes through length 4");
}
