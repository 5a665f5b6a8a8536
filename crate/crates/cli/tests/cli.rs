use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gwpeel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwpeel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gwpeel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn solve_matches_closed_forms() {
    let o = gwpeel(&["solve", "--family", "catalan"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0.535898"), "{}", stdout(&o));

    let v = json(&gwpeel(&[
        "solve",
        "--family",
        "geometric",
        "--s",
        "2",
        "--format",
        "json",
    ]));
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    assert!((v["q"]["value"].as_f64().unwrap() - golden).abs() < 1e-10);
    assert!((v["q_s"]["value"].as_f64().unwrap() - (1.0 - golden)).abs() < 1e-10);
}

#[test]
fn dist_rows_and_tail_sum_to_one() {
    for kind in ["peel", "leafheight", "rootlaw"] {
        let o = gwpeel(&[
            "dist", "--family", "motzkin", "--kind", kind, "--terms", "12",
        ]);
        assert!(o.status.success(), "{kind}");
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("index,value"));
        let total: f64 = lines
            .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-10, "{kind}: {total}");
    }
}

#[test]
fn analyze_reports_parameters_and_bad_lines() {
    let o = with_stdin(&["analyze", "-", "--s", "3"], "1,1,0\n2,0\n0\n");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("line 1: n=3 I=2 V=1 m=2 lambda=2"), "{out}");
    assert!(out.contains("line 3: n=1"), "{out}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = with_stdin(&["analyze", "-"], "2,0\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sampled_trees_round_trip_through_analyze() {
    let o = gwpeel(&[
        "sample", "--family", "motzkin", "--n", "50", "--count", "5", "--seed", "3",
    ]);
    assert!(o.status.success());
    let trees = stdout(&o);
    assert_eq!(trees.lines().count(), 5);
    for line in trees.lines() {
        assert_eq!(line.split(',').count(), 50);
    }
    let a = with_stdin(&["analyze", "-", "--format", "json"], &trees);
    assert!(a.status.success());
    let rows = json(&a);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["n"] == 50));
}

#[test]
fn exit_codes() {
    assert_eq!(
        gwpeel(&["solve", "--family", "pmf:1.0"]).status.code(),
        Some(1)
    );
    assert_eq!(gwpeel(&["bogus"]).status.code(), Some(1));
    let o = gwpeel(&["sample", "--family", "binary", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("11"));
    assert_eq!(gwpeel(&["--help"]).status.code(), Some(0));
}

#[test]
fn experiment_json_carries_target_and_verdict() {
    let args = [
        "experiment",
        "independence",
        "--family",
        "binary",
        "--n",
        "101,201",
        "--trials",
        "20",
    ];
    let o = gwpeel(&args);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["name"], "independence");
    assert!((v["target"].as_f64().unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-12);
    assert_eq!(v["estimates"].as_array().unwrap().len(), 2);
    assert!(v["verdict"].is_string());
    assert_eq!(gwpeel(&args).stdout, o.stdout, "same seed, same output");
}

#[test]
fn table1_has_a_row_per_family() {
    let o = gwpeel(&["table1", "--trials", "3", "--n", "101"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for family in [
        "binary",
        "tary:3",
        "cayley",
        "geometric",
        "motzkin",
        "catalan",
        "binomial:3",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(family)),
            "missing {family}\n{text}"
        );
    }
}
