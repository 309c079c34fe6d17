use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distinguish"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn invariants_of_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["invariants", "family:cycle(6)", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"]["chi_D"], 4, "{v}");
}

#[test]
fn invariants_of_k4_table_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["invariants", "family:complete(4)", "--dot", "k4.dot"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[4], "4", "D column of {row}");
    let dot = std::fs::read_to_string(dir.path().join("k4.dot")).unwrap();
    assert!(dot.starts_with("graph"));
}

#[test]
fn atlas_range_gives_one_report_per_graph() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["invariants", "atlas:3..4", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn unreadable_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"n\": 3, \"edges\": [[0,");
    let o = run(&["invariants", &bad], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
    let o = run(&["invariants", "missing.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["invariants", "family:no_such_family(3)"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_2d1_rejects_kdd() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["construct", "2d1", "family:complete_bipartite(3,3)"], dir.path());
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("K_{3,3}"), "{}", stderr(&o));
}

#[test]
fn construct_2d1_on_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["construct", "2d1", "family:petersen()"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["colours"].as_u64().unwrap() <= 5);
    assert_eq!(v["colouring"]["vertex_colours"].as_array().unwrap().len(), 10);
}

#[test]
fn construct_tree3_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["construct", "tree3", "family:regular_tree(3,20)", "--dot", "out.dot"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["colours"], 3);
    let dot = std::fs::read_to_string(dir.path().join("out.dot")).unwrap();
    assert!(dot.contains("black"));
}

#[test]
fn construct_subcubic4_reports_infeasible_first_stage() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["construct", "subcubic4", "family:regular_tree(3,24)"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("C_7"), "{}", stderr(&o));
}

#[test]
fn construct_from_input_colouring_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["construct", "total-pin", "family:cycle(5)"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = write(dir.path(), "total.json", &v["colouring"].to_string());
    let o = run(&["verify", "family:cycle(5)", &c, "--proper", "--distinguishing"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn verify_reports_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c4.json", r#"{"kind":"vertex","vertex_colours":[1,1,2,2]}"#);
    let o = run(&["verify", "family:cycle(4)", &c, "--distinguishing"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn verify_checks_only_what_is_asked() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "p3.json", r#"{"kind":"vertex","vertex_colours":[1,2,2]}"#);
    let o = run(&["verify", "family:path(3)", &c], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["verify", "family:path(3)", &c, "--proper"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_rejects_a_colouring_of_the_wrong_shape() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "e.json", r#"{"kind":"edge","edge_colours":[1]}"#);
    let o = run(&["verify", "family:path(3)", &c], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("edge id 1"), "{}", stderr(&o));
}

#[test]
fn experiment_rejects_unknown_checks() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "x.json", r#"{"corpus":["family:cycle(5)"],"checks":["bogus"]}"#);
    let o = run(&["experiment", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn experiment_writes_csv_and_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "y.json",
        r#"{"corpus":["atlas:4","family:cycle(5)"],"checks":["D'<=D+1","chi'D<=Delta+1"],"output":"out.csv"}"#,
    );
    let o = run(&["experiment", &cfg], dir.path());
    // C4 and K4 break chi'D <= Delta+1.
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert!(csv.starts_with("graph,check,lhs,rhs,verdict"));
    assert_eq!(csv.lines().filter(|l| l.ends_with(",fail")).count(), 2, "{csv}");
    let ce: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.counterexamples.json")).unwrap()).unwrap();
    assert_eq!(ce.as_array().unwrap().len(), 2);
}
