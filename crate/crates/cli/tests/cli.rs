use std::path::PathBuf;
use std::process::{Command, Output};

fn o1p(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_o1p"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("o1p-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const K4: &str = r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0],[0,2],[1,3]]}"#;
const C5: &str = r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#;

#[test]
fn theta_of_k4_is_infinite() {
    let g = scratch("k4.json", K4);
    let out = o1p(&["theta", "--graph", g.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "inf");
}

#[test]
fn c4_gadget_verifies_at_cap_eight() {
    let out = o1p(&["verify-gadgets", "--gadget", "C4", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["gadget"], "C4");
    assert!(report["counterexample"].is_null());
}

#[test]
fn color_c5_with_random_lists() {
    let g = scratch("c5.json", C5);
    let out = o1p(&[
        "color",
        "--graph",
        g.to_str().unwrap(),
        "--random-lists",
        "--palette",
        "8",
        "--seed",
        "1",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(result["coloring"].as_object().unwrap().len(), 5);
}

#[test]
fn colored_output_passes_check() {
    let g = scratch("c5b.json", C5);
    let out = o1p(&["color", "--graph", g.to_str().unwrap(), "--random-lists", "--seed", "3"]);
    let result: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let c = scratch("c5-coloring.json", &result["coloring"].to_string());
    let out = o1p(&["check", "--graph", g.to_str().unwrap(), "--coloring", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn improper_coloring_exits_two() {
    let g = scratch("p3.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    let c = scratch("p3-bad.json", r#"{"0-1":0,"1-2":0}"#);
    let out = o1p(&["check", "--graph", g.to_str().unwrap(), "--coloring", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_five_is_a_precondition_failure() {
    let g = scratch(
        "d5.json",
        r#"{"n":6,"edges":[[0,1],[0,2],[0,3],[0,4],[0,5],[1,2],[2,3],[3,4],[4,5]]}"#,
    );
    let out = o1p(&["color", "--graph", g.to_str().unwrap(), "--random-lists"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
}

#[test]
fn io_and_schema_errors_exit_one() {
    let out = o1p(&["theta", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");

    let g = scratch("broken.json", r#"{"n":3"#);
    let out = o1p(&["theta", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chromatic_index_of_k4() {
    let g = scratch("k4b.json", K4);
    let out = o1p(&["chi-prime", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn generated_drawings_round_trip() {
    let out = o1p(&["gen", "--n", "12", "--seed", "4", "--max-crossings", "2", "--theta3"]);
    assert!(out.status.success());
    let g = scratch("gen.json", &stdout(&out));
    let out = o1p(&["color", "--graph", g.to_str().unwrap(), "--random-lists", "--palette", "100"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn enumerate_triangle_drawings() {
    let out = o1p(&["enumerate", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = o1p(&["enumerate", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_audit_passes() {
    let out = o1p(&["audit", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn catalog_dump_is_json() {
    let out = o1p(&["catalog", "--dump"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["configurations"].as_array().unwrap().len() >= 10);
}

#[test]
fn dot_export_draws_every_edge() {
    let g = scratch("k4c.json", K4);
    let out = o1p(&["export-dot", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&out).matches(" -- ").count(), 6);
}

#[test]
fn gadget_counterexample_exits_three() {
    let out = o1p(&["verify-gadgets", "--gadget", "Rhat2", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let first: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert!(first["counterexample"].is_object());
}
