use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tripent(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripent"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn tripent")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn preset_writes_one_file_per_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = tripent(dir.path(), &["preset", "fig1b", "--set", "samples=20", "--out-dir", "runs"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut names: Vec<String> = fs::read_dir(dir.path().join("runs"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        ["fig1b_K10-15-20.csv", "fig1b_K2-18-20.csv", "fig1b_K2-5-10.csv", "fig1b_K8-12-18.csv"]
    );
    let text = fs::read_to_string(dir.path().join("runs/fig1b_K2-5-10.csv")).unwrap();
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn run_reads_config_file_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("red.cfg"),
        "# red curve\nK1=2 K2=18 K3=20\nR=10\nphi=3.141592653589793\nsamples=500\noutput=red.csv\n",
    )
    .unwrap();
    let out = tripent(dir.path(), &["run", "red.cfg", "--set", "samples=3", "--solver", "both"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("red.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,n1_23,n2_13,n3_12,n3,solver_gap,closedform_gap"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn sweep_writes_phase_axis() {
    let dir = tempfile::tempdir().unwrap();
    let out = tripent(
        dir.path(),
        &["sweep", "--var", "phi", "--from", "0", "--to", "6.283185307179586", "--steps", "9", "--output", "phi.csv"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("phi.csv")).unwrap();
    assert!(text.starts_with("phi,"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn validate_reports_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = tripent(dir.path(), &["validate", "--set", "preset=fig4a"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok ")).count(), 4);
    assert!(stdout.contains("p=0.7"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_p = tripent(dir.path(), &["validate", "--set", "p=1.5"]);
    assert_eq!(bad_p.status.code(), Some(1));
    assert!(stderr(&bad_p).contains("`p`"));

    let unknown = tripent(dir.path(), &["run", "--set", "Q=3"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).contains("`Q`"));

    let missing = tripent(dir.path(), &["run", "missing.cfg"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(stderr(&missing).contains("missing.cfg"));

    let unwritable = tripent(dir.path(), &["run", "--set", "samples=2", "--output", "no/such/dir/x.csv"]);
    assert_eq!(unwritable.status.code(), Some(3));

    let usage = tripent(dir.path(), &["frobnicate"]);
    assert_eq!(usage.status.code(), Some(1));

    let preset = tripent(dir.path(), &["preset", "fig9z"]);
    assert_eq!(preset.status.code(), Some(1));
}
