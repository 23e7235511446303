//! The binary end to end: reports, exit codes and files.

use std::path::Path;
use std::process::{Command, Output};

use mediankit::report::AnalysisReport;
use serde_json::Value;

fn mediankit(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mediankit"));
    cmd.args(args).env_remove("MEDIANKIT_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> AnalysisReport {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn rank_of_square() {
    let out = mediankit(&["rank", "--fixture", "SQUARE"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.verdict["rank"], 2);
    assert_eq!(r.command, ["rank", "--fixture", "SQUARE"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank 2"));
}

#[test]
fn free_certificate_on_the_ball_verifies() {
    let args = [
        "free-cert",
        "--fixture",
        "F2BALL",
        "--a",
        "a",
        "--b",
        "b",
        "--h",
        "wa+",
        "--k",
        "wb+",
        "--max-word-len",
        "4",
        "--verify",
    ];
    let out = mediankit(&args, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out).verdict;
    assert_eq!(v["status"], "VERIFIED");
    assert_eq!(v["depth"], 4);
    assert_eq!(v["reverified"], true);
    assert_eq!(v["inclusions"].as_array().unwrap().len(), 12);
}

#[test]
fn staircase_graph_to_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = mediankit(
        &["ubs-graph", "--fixture", "STAIRFLAP", "--dot", path(&dot)],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("[label=").count(), 2);
    assert_eq!(text.matches("->").count(), 1);
    assert_eq!(
        report(&out).verdict["vertices"].as_array().unwrap().len(),
        2
    );
}

#[test]
fn exit_codes() {
    assert_eq!(mediankit(&["rank"], &[]).status.code(), Some(64));
    assert_eq!(mediankit(&["no-such-command"], &[]).status.code(), Some(64));
    assert_eq!(
        mediankit(&["rank", "--fixture", "NOPE"], &[]).status.code(),
        Some(65)
    );
    // No facing triple in a product of paths: a definitive negative.
    assert_eq!(
        mediankit(&["facing", "--fixture", "GRID"], &[])
            .status
            .code(),
        Some(2)
    );
    // The window has more walls than the default enumeration cap.
    let capped = mediankit(&["lineal", "--fixture", "LINE"], &[]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(report(&capped).error.unwrap().code, "WALL_BUDGET_EXCEEDED");
    let raised = mediankit(
        &["lineal", "--fixture", "LINE"],
        &[("MEDIANKIT_BUDGET", "walls=24")],
    );
    assert_eq!(raised.status.code(), Some(0));
    let bad_env = mediankit(
        &["rank", "--fixture", "SQUARE"],
        &[("MEDIANKIT_BUDGET", "walls")],
    );
    assert_eq!(bad_env.status.code(), Some(65));
}

#[test]
fn malformed_files_name_the_line_or_field() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = dir.path().join("syntax.json");
    std::fs::write(&syntax, "{\"walls\": [\n  {\"id\": \"a\",}\n]}").unwrap();
    let out = mediankit(&["rank", "--file", path(&syntax)], &[]);
    assert_eq!(out.status.code(), Some(65));
    assert!(report(&out).error.unwrap().message.contains("line 2"));
    let field = dir.path().join("field.json");
    std::fs::write(
        &field,
        r#"{"walls": [{"id": "a", "pos": "a", "neg": "a*", "weight": "-1"}]}"#,
    )
    .unwrap();
    let out = mediankit(&["rank", "--file", path(&field)], &[]);
    assert_eq!(out.status.code(), Some(65));
    assert!(report(&out)
        .error
        .unwrap()
        .message
        .contains("walls[0].weight"));
}

#[test]
fn invalid_pocset_lists_violations() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    let text = r#"{"walls": [{"id": "a", "pos": "a", "neg": "a*", "weight": "1"}],
                  "order": [["a", "a*"]]}"#;
    std::fs::write(&f, text).unwrap();
    let out = mediankit(&["validate", "--file", path(&f)], &[]);
    assert_eq!(out.status.code(), Some(2));
    let v = report(&out).verdict;
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["pair"], serde_json::json!(["a", "a*"]));
}

#[test]
fn identical_runs_give_identical_reports() {
    let args = ["classify", "--fixture", "F2BALL"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    assert_eq!(strip(mediankit(&args, &[])), strip(mediankit(&args, &[])));
}

#[test]
fn dumped_fixtures_load_back_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["SQUARE", "PATH3", "TRIPOD", "GRID", "LINE", "F2BALL"] {
        let dump = mediankit(&["--dump-fixture", name], &[]);
        assert_eq!(dump.status.code(), Some(0));
        let f = dir.path().join(format!("{name}.json"));
        std::fs::write(&f, &dump.stdout).unwrap();
        let from_file = report(&mediankit(&["rank", "--file", path(&f)], &[]));
        let builtin = report(&mediankit(&["rank", "--fixture", name], &[]));
        assert_eq!(
            from_file.inputs[0].sha256, builtin.inputs[0].sha256,
            "{name}"
        );
        assert_eq!(from_file.verdict, builtin.verdict, "{name}");
    }
    let sys = dir.path().join("s.json");
    let shift = dir.path().join("g.json");
    std::fs::write(
        &sys,
        mediankit(&["--dump-fixture", "system:STAIRFLAP"], &[]).stdout,
    )
    .unwrap();
    std::fs::write(
        &shift,
        mediankit(&["--dump-fixture", "shift:STAIRFLAP"], &[]).stdout,
    )
    .unwrap();
    let out = mediankit(
        &["ubs-chi", "--file", path(&sys), "--shift", path(&shift)],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).verdict["chi"], serde_json::json!(["1", "1"]));
}

#[test]
fn skewer_certificates_reverify() {
    let out = mediankit(
        &["skewer", "--fixture", "LINE", "--pair", "u0,u0", "--verify"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).verdict["reverified"], true);
}

#[test]
fn acceptance_subset() {
    let out = mediankit(&["acceptance", "--only", "9,11"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("PASS  9") && stderr.contains("PASS 11"),
        "{stderr}"
    );
}
