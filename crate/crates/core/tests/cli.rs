//! The command-line tool: exit codes, report round trips and golden output.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use toric_cox::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-cox")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric-cox"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["symmetry", "no-such-file.json"]).status.code(), Some(2));
    let o = run_stdin(&["symmetry", "-"], r#"{"format":1,"lattice_rank":2,"rays":[[2,0],[0,1]]}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["symmetry", "-"], r#"{"format":1,"lattice_rank":1,"rays":[[1],[-1]],"colour":"red"}"#);
    assert_eq!(o.status.code(), Some(2), "unknown keys are rejected");
    assert_eq!(run_stdin(&["theta", "-"], "not json").status.code(), Some(2));
}

#[test]
fn preconditions_exit_3() {
    let dir = std::env::temp_dir().join("toric-cox-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("perm4.svg");
    assert_eq!(run(&["plot", "perm4", out.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["gkz", "perm4"]).status.code(), Some(3));
    assert_eq!(run(&["hhl", "P2", "--phi", "[[1,1],[2,2]]"]).status.code(), Some(3));
}

#[test]
fn order_of_the_plane() {
    let o = run(&["theta", "P2", "--order"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("exceptional order -2 ≺ -1 ≺ 0"), "{}", stdout(&o));
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["--json", "report-all", "P1xP1"],
        vec!["--json", "theta", "BlP2", "--strata", "--orbits", "--sod", "--hom", "--order"],
        vec!["--json", "hhl", "P1xP1", "--phi", "[[1,1]]"],
        vec!["--json", "refine", "perm3"],
        vec!["--json", "--seedless", "symmetry", "perm4"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        let text = stdout(&o);
        let r = Report::from_json(&text).unwrap();
        assert_eq!(r.to_json(), text, "{args:?}");
    }
}

#[test]
fn custom_input_from_stdin() {
    let f1 = r#"{"format":1,"name":"F1","lattice_rank":2,"rays":[[1,0],[0,1],[-1,1],[0,-1]],
        "max_cones":[[0,1],[1,2],[2,3],[0,3]]}"#;
    let o = run_stdin(&["--json", "theta", "-"], f1);
    assert!(o.status.success());
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.theta.unwrap().classes.len(), 4);
}

#[test]
fn plot_labels_every_stratum() {
    let dir = std::env::temp_dir().join("toric-cox-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("P2.svg");
    assert!(run(&["plot", "P2", out.to_str().unwrap()]).status.success());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("<text").count(), 6);
    assert_eq!(svg.matches("<circle").count(), 1);
    assert!(!svg.contains("<path"));
}

#[test]
fn golden_report_of_the_plane() {
    let o = run(&["--json", "report-all", "P2"]);
    assert_eq!(stdout(&o), golden("report_all_P2.json"));
}

#[test]
fn golden_hexagon_text() {
    let o = run(&["theta", "perm3", "--strata", "--orbits", "--sod", "--hom", "--order"]);
    assert_eq!(stdout(&o), golden("theta_perm3.txt"));
}
