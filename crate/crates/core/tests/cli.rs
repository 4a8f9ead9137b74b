//! Drives the installed binary end to end: exit codes, report output,
//! JSON output, trace round-trips through `plot`, and error reporting.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_indexbound"))
}

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn shipped(name: &str) -> PathBuf {
    problems_dir().join(name)
}

/// Per-test scratch path in the system temp directory.
fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("indexbound-cli-{}-{name}", std::process::id()))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn solve_prints_report_and_exits_zero() {
    let out = bin()
        .args(["solve"])
        .arg(shipped("two-pockets.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("XIBBA"), "report missing XIBBA: {text}");
    assert!(text.contains("FIBBA"), "report missing FIBBA: {text}");
    assert!(text.contains("Eval."), "report missing Eval.: {text}");
}

#[test]
fn solve_json_is_machine_readable() {
    let out = bin()
        .args(["solve", "--json"])
        .arg(shipped("two-pockets.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "solved");
    assert_eq!(v["method"], "ibba");
    assert!(v["x"].is_f64());
    assert!(v["iterations"].is_u64());
}

#[test]
fn infeasible_problem_exits_two() {
    let out = bin()
        .args(["solve"])
        .arg(shipped("never-feasible.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("infeasible"));
}

#[test]
fn unresolved_needle_exits_three() {
    // The only feasible point is x = 0, a single touch of x^2 at zero;
    // no trial lands on it exactly and no interval around it can be
    // pruned, so the run stops at resolution without an answer.
    let path = scratch("needle.problem");
    std::fs::write(
        &path,
        "name needle\ndomain -1 1.3\nconstraint x^2 | K=3\nobjective x | K=1.5\n",
    )
    .unwrap();
    let out = bin().args(["solve"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "stdout: {}", stdout(&out));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exhausted_budget_exits_four() {
    let out = bin()
        .args(["solve", "--max-iter", "5"])
        .arg(shipped("two-pockets.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_file_exits_one_with_path() {
    let out = bin()
        .args(["solve", "/no/such/file.problem"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/no/such/file.problem"));
}

#[test]
fn malformed_file_reports_its_line() {
    let path = scratch("malformed.problem");
    std::fs::write(
        &path,
        "name broken\ndomain 0 1\nconstrnt x | K=1\nobjective x | K=1\n",
    )
    .unwrap();
    let out = bin().args(["solve"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "stderr: {err}");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn pen_rejects_partial_constraints() {
    let out = bin()
        .args(["solve", "--method", "pen"])
        .arg(shipped("guarded-log.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("partial"), "stderr: {}", stderr(&out));
}

#[test]
fn trace_then_plot_renders_svg() {
    let trace = scratch("two-pockets.trace");
    let svg = scratch("two-pockets.svg");
    let out = bin()
        .args(["solve", "--trace"])
        .arg(&trace)
        .arg(shipped("two-pockets.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let out = bin()
        .arg("plot")
        .arg(&trace)
        .arg(shipped("two-pockets.problem"))
        .arg("--out")
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let diagram = std::fs::read_to_string(&svg).unwrap();
    assert!(diagram.starts_with("<svg"), "not an svg: {diagram:.80}");
    assert!(diagram.contains("class=\"feasible\""));

    std::fs::remove_file(&trace).unwrap();
    std::fs::remove_file(&svg).unwrap();
}

#[test]
fn plot_rejects_trace_from_another_problem() {
    let trace = scratch("mismatch.trace");
    let svg = scratch("mismatch.svg");
    let out = bin()
        .args(["solve", "--trace"])
        .arg(&trace)
        .arg(shipped("two-pockets.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin()
        .arg("plot")
        .arg(&trace)
        .arg(shipped("kink.problem"))
        .arg("--out")
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!svg.exists(), "mismatched plot still wrote output");

    std::fs::remove_file(&trace).unwrap();
}

#[test]
fn compare_prints_table_with_average_row() {
    let out = bin()
        .arg("compare")
        .arg(shipped("two-pockets.problem"))
        .arg(shipped("kink.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("two pockets"));
    assert!(text.contains("kink"));
    assert!(
        text.contains("Average"),
        "table missing average row: {text}"
    );
    assert!(text.contains("Speedup"));
}

#[test]
fn compare_json_round_trips() {
    let out = bin()
        .args(["compare", "--json"])
        .arg(shipped("two-sines.problem"))
        .arg(shipped("kink.problem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["average"].is_object());
}

#[test]
fn compare_writes_to_out_file() {
    let path = scratch("table.txt");
    let out = bin()
        .arg("compare")
        .arg(shipped("two-sines.problem"))
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("Average"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn help_exits_zero_and_usage_error_exits_one() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("solve"));

    let out = bin().args(["solve"]).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "missing argument should be a usage error"
    );
}
