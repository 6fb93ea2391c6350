//! End-to-end runs of the `hochwerk` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use hochwerk::cli::report::Record;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hochwerk"));
    cmd.env_remove("HOCHWERK_BUDGET");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn records(o: &Output) -> Vec<Record> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("record line"))
        .collect()
}

#[test]
fn verify_all_on_bundled_fixture() {
    let o = run(&["verify", "--suite", "all", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    for id in ["thm3.1", "cor3.2", "thm3.3", "cor3.4", "cor3.5", "thm3.6", "thm3.8"] {
        assert!(out.contains(id), "{id} missing from\n{out}");
    }
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn records_round_trip() {
    let o = run(&["verify", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let recs = records(&o);
    assert_eq!(recs.len(), 7);
    let again: Vec<String> = recs.iter().map(Record::to_json_line).collect();
    assert_eq!(again.join("\n") + "\n", text);
    assert!(recs.iter().all(Record::is_match));
}

#[test]
fn output_is_deterministic() {
    let path = fixture("kronecker.instance");
    let args = ["run", "--instance", path.to_str().unwrap(), "--format", "records"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let table = ["run", "--instance", path.to_str().unwrap()];
    assert_eq!(run(&table).stdout, run(&table).stdout);
}

#[test]
fn out_file_holds_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("records.jsonl");
    let o = run(&["cohomology", "--algebra", "T", "--coeff", "T", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let rec: Record = serde_json::from_str(text.trim()).unwrap();
    match rec {
        Record::Complex(c) => assert_eq!(c.report.homology_dims(), vec![1, 0, 0, 0]),
        other => panic!("unexpected record {other:?}"),
    }
    assert!(stdout(&o).contains("cohomology"));
}

#[test]
fn budget_from_flag_and_environment() {
    let o = run(&["verify", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let o = bin().args(["verify"]).env("HOCHWERK_BUDGET", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin()
        .args(["verify", "--budget", "100000"])
        .env("HOCHWERK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--budget", "10", "--force"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn projected_sizes_go_to_stderr() {
    let o = run(&["homology", "--algebra", "T", "--coeff", "T", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("projected dimension"), "{err}");
    assert!(err.contains("homology T[T]"), "{err}");
}

#[test]
fn derived_tasks_in_fixtures() {
    let path = fixture("kronecker.instance");
    let o = run(&["run", "--instance", path.to_str().unwrap(), "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let ext: Vec<Vec<usize>> = records(&o)
        .into_iter()
        .filter_map(|r| match r {
            Record::Derived(d) if d.op == "ext" => Some(d.dims),
            _ => None,
        })
        .collect();
    assert_eq!(ext, vec![vec![0, 0, 0], vec![0, 2, 0]]);

    let path = fixture("one_point.instance");
    let o = run(&["run", "--instance", path.to_str().unwrap(), "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let thm = records(&o)
        .into_iter()
        .find_map(|r| match r {
            Record::Verification(v) if v.suite == "thm3.8" => Some(v),
            _ => None,
        })
        .unwrap();
    assert!(thm.flags["shifted_holds"] && !thm.flags["same_degree_holds"]);
}

#[test]
fn ext_and_tor_subcommands() {
    let o = run(&["ext", "--algebra", "T", "--m", "T.m", "--y", "T.m", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["tor", "--algebra", "T", "--x", "T", "--m", "T.m", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    match &records(&o)[0] {
        Record::Derived(d) => assert_eq!(d.dims, vec![1, 0, 0, 0]),
        other => panic!("unexpected record {other:?}"),
    }
    let o = run(&["trace", "--algebra", "T"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validate_accepts_every_fixture() {
    for name in ["t3.instance", "kronecker.instance", "one_point.instance"] {
        let o = run(&["validate", "--instance", fixture(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.instance");
    // e0 e0 = e1 and e1 e0 = e1, so (e0 e0) e0 = e1 but e0 (e0 e0) = 0.
    std::fs::write(
        &bad,
        r#"schema = "hochwerk-instance/1"
[algebras.N]
dim = 2
mult = [[[0, 1], [0, 0]], [[0, 1], [0, 0]]]
"#,
    )
    .unwrap();
    let o = run(&["validate", "--instance", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("algebras.N"));

    let missing = dir.path().join("missing.instance");
    assert_eq!(run(&["verify", "--instance", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "thm9.9"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--algebra", "Z", "--coeff", "T"]).status.code(), Some(2));
}
