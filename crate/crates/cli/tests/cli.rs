use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use udisc::simulate::example_subspaces;
use udisc_cli::schema::{ProblemFile, SolutionFile};

fn udisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udisc"))
        .args(args)
        .output()
        .expect("spawn udisc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn example_file(dir: &Path) -> PathBuf {
    let (s1, s2) = example_subspaces();
    let pf = ProblemFile::from_subspaces(4, s1.spanning_vectors(), s2.spanning_vectors());
    write_file(dir, "example.json", &serde_json::to_string(&pf).unwrap())
}

#[test]
fn solve_example_at_half() {
    let dir = tempfile::tempdir().unwrap();
    let f = example_file(dir.path());
    let o = udisc(&["solve", "--problem", f.to_str().unwrap(), "--eta", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let sol: SolutionFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(sol.q_total, std::f64::consts::FRAC_1_SQRT_2);
    assert!(sol.saturates);
    assert_eq!(sol.sectors.len(), 2);
    assert!(sol.pi0.is_some() && sol.pi1.is_some() && sol.pi2.is_some());
}

#[test]
fn solution_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = example_file(dir.path());
    let out = dir.path().join("sol.json");
    for eta in ["0.1", "0.37", "0.5", "0.61803398874989", "0.93"] {
        let o = udisc(&[
            "solve",
            "--problem",
            f.to_str().unwrap(),
            "--eta",
            eta,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let text = std::fs::read_to_string(&out).unwrap();
        let sol: SolutionFile = serde_json::from_str(&text).unwrap();
        let again = udisc_cli::to_json(&sol);
        assert_eq!(again, text);
        let reparsed: SolutionFile = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, sol);
    }
}

#[test]
fn angle_only_problem() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(
        dir.path(),
        "angles.json",
        r#"{"cos_angles": [0.8, 0.3], "alpha": [0.5, 0.5], "beta": [0.2, 0.8]}"#,
    );
    let o = udisc(&["intervals", "--problem", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["intervals"].as_array().unwrap().len(), 2);

    let o = udisc(&["solve", "--problem", f.to_str().unwrap(), "--eta", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("pi0"));

    // no frames to sample from
    let o = udisc(&["simulate", "--problem", f.to_str().unwrap(), "--eta", "0.4", "--trials", "10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("frames"));
}

#[test]
fn out_of_range_prior() {
    let dir = tempfile::tempdir().unwrap();
    let f = example_file(dir.path());
    let o = udisc(&["solve", "--problem", f.to_str().unwrap(), "--eta", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid prior"), "{}", stderr(&o));
}

#[test]
fn malformed_problem_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("not json", "malformed"),
        (r#"{"cos_angles": [0.5], "colour": 1}"#, "unknown field"),
        (r#"{"cos_angles": [0.5], "ambient_dim": 2}"#, "exactly one"),
        (r#"{}"#, "need either"),
        (r#"{"ambient_dim": 2, "s1_basis": [[[1,0],[0,0]]]}"#, "needs all"),
        (r#"{"cos_angles": [0.5, 0.2], "alpha": [0.5, 0.6]}"#, "weights"),
        (r#"{"cos_angles": [1.0]}"#, "invalid angles"),
        (
            r#"{"ambient_dim": 2, "s1_basis": [[[1,0],[0,0]]], "s2_basis": [[[2,0],[0,0]]]}"#,
            "general position",
        ),
        (
            r#"{"ambient_dim": 4, "s1_basis": [[[1,0],[0,0]]], "s2_basis": [[[0,0],[1,0]]]}"#,
            "dimension",
        ),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let f = write_file(dir.path(), &format!("bad{i}.json"), text);
        let o = udisc(&["intervals", "--problem", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
        assert!(stderr(&o).contains(needle), "case {i}: {}", stderr(&o));
    }
    let o = udisc(&["intervals", "--problem", "/nonexistent/problem.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_flag_prints_usage() {
    let o = udisc(&["census", "--cos2theta1", "0.75", "--cos2theta2", "0.25", "--verbose"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn census_counts() {
    let o = udisc(&["census", "--cos2theta1", "0.75", "--cos2theta2", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["counts"];
    assert_eq!(c["total"], 25);
    assert_eq!(c["saturating"], 3);
    assert_eq!(c["projective"], 12);
    assert_eq!(c["mixed"], 10);
}

#[test]
fn divider_curves_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let o = udisc(&[
        "divider-curves",
        "--cos2theta1",
        "0.75",
        "--cos2theta2",
        "0.25",
        "--grid",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["alpha", "beta1", "beta2", "beta3", "beta4"]);
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 9);
    let mid = &rows[4];
    assert_eq!(mid[0], 0.5);
    assert!((mid[2] - 0.25).abs() < 1e-12 && (mid[3] - 0.75).abs() < 1e-12);
}

#[test]
fn scenarios_run() {
    let o = udisc(&["scenario", "key-sharing", "--rounds", "2000", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["disturbance_detected"], 0);
    assert_eq!(v["eve_enabled"], false);

    let o = udisc(&["scenario", "key-sharing", "--rounds", "2000", "--seed", "5", "--eve"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["eve_enabled"], true);

    let o = udisc(&["scenario", "black-box", "--trials", "500", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["misidentifications"], 0);
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let f = example_file(dir.path());
    let p = f.to_str().unwrap();
    let base = udisc(&["simulate", "--problem", p, "--eta", "0.5", "--trials", "20000", "--seed", "9"]);
    assert_eq!(base.status.code(), Some(0));
    for shards in ["1", "3", "8"] {
        let o = udisc(&[
            "simulate", "--problem", p, "--eta", "0.5", "--trials", "20000", "--seed", "9", "--shards", shards,
        ]);
        assert_eq!(o.stdout, base.stdout, "shards = {shards}");
    }
    let other = udisc(&["simulate", "--problem", p, "--eta", "0.5", "--trials", "20000", "--seed", "10"]);
    assert_ne!(other.stdout, base.stdout);
}
