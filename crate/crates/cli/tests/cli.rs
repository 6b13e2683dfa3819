use std::fs;
use std::process::{Command, Output};

use ramsey_cli::io::{read_coloring, write_coloring};
use ramsey_core::{checker, Coloring, Parameters};

fn ramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(args)
        .output()
        .expect("run ramsey")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute() {
    let o = ramsey(&["compute", "-t", "3", "-m", "3,3,3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "5\n"));
    let o = ramsey(&["compute", "-t", "3", "-m", "3,3", "-s", "2"]);
    assert_eq!(stdout(&o), "4\n");
    let o = ramsey(&["compute", "-t", "2", "-m", "3", "-s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t >= 3"));
}

#[test]
fn compute_trace() {
    let o = ramsey(&["compute", "-t", "3", "-m", "3,4,4", "--trace"]);
    let out = stdout(&o);
    assert!(out.starts_with("5\n"), "{out}");
    assert!(out.contains("step \"two-star-base\""));
    assert!(out.contains("step \"odd-x-parity\""));
    assert!(out.ends_with("result 5\n"));
}

#[test]
fn bad_usage_exits_2() {
    assert_eq!(ramsey(&["compute", "-t", "3"]).status.code(), Some(2));
    assert_eq!(ramsey(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ramsey(&["compute", "-t", "x", "-m", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn witness_to_stdout() {
    let o = ramsey(&["witness", "-t", "3", "-m", "3,4,4"]);
    assert_eq!(o.status.code(), Some(0));
    let c = read_coloring(&stdout(&o)).unwrap();
    assert_eq!(c.n(), 4);
    let err = stderr(&o);
    assert!(err.contains("R = 5"), "{err}");
    assert!(err.contains("rule = odd-x-parity"), "{err}");

    let o = ramsey(&["witness", "-t", "3", "-m", "2,2", "-s", "2"]);
    assert_eq!(read_coloring(&stdout(&o)).unwrap().n(), 2);
}

#[test]
fn witness_file_verifies_in_user_order() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("w.txt");
    let dot = dir.path().join("w.dot");
    let cert_s = cert.to_str().unwrap();
    let o = ramsey(&[
        "witness",
        "-t",
        "3",
        "-m",
        "4,2,5",
        "--out",
        cert_s,
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("R = "));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph K"));

    let o = ramsey(&["verify", cert_s, "-t", "3", "-m", "4,2,5"]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "AVOIDS\n")
    );

    // the same coloring read against the sorted order arrives
    let o = ramsey(&["verify", cert_s, "-t", "3", "-m", "2,4,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("ARRIVES target="));
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("w.txt");
    let o = ramsey(&[
        "witness",
        "-t",
        "3",
        "-m",
        "3,3,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("mono.txt");
    fs::write(&mono, write_coloring(&Coloring::uniform(3, 3, 1).unwrap())).unwrap();
    let o = ramsey(&["verify", mono.to_str().unwrap(), "-t", "3", "-m", "2,2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "ARRIVES target=2 embedding=star:center=0:leaves=1,2\n"
    );

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "ramsey-coloring v1\nn=3 t=3\n0 1 1\n").unwrap();
    let o = ramsey(&["verify", bad.to_str().unwrap(), "-t", "3", "-m", "2,2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing edge (0,2)"));

    let o = ramsey(&["verify", mono.to_str().unwrap(), "-t", "4", "-m", "2,2,2,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ramsey(&["verify", "/nonexistent/file", "-t", "3", "-m", "2,2,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matching_embedding_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("mono.txt");
    fs::write(&mono, write_coloring(&Coloring::uniform(4, 3, 1).unwrap())).unwrap();
    let o = ramsey(&[
        "verify",
        mono.to_str().unwrap(),
        "-t",
        "3",
        "-m",
        "9,9",
        "-s",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "ARRIVES target=3 embedding=matching:0-1,2-3\n");
}

#[test]
fn search() {
    let o = ramsey(&["search", "-t", "3", "-m", "2,2,2", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("R = 3 (exact)\nnodes = "), "{out}");

    let o = ramsey(&[
        "search", "-t", "3", "-m", "5,5,5", "--cap", "6", "--jobs", "2",
    ]);
    assert!(
        stdout(&o).starts_with("R >= 7 (cap_reached)"),
        "{}",
        stdout(&o)
    );

    let o = ramsey(&["search", "-t", "3", "-m", "3,3,3", "--budget", "1"]);
    assert!(stdout(&o).contains("(budget_exhausted)"), "{}", stdout(&o));

    let o = ramsey(&[
        "search",
        "-t",
        "3",
        "-m",
        "3,4",
        "-s",
        "2",
        "--verbose",
        "--jobs",
        "3",
    ]);
    assert!(stdout(&o).starts_with("R = 5 (exact)"));
    assert!(stderr(&o).contains("n=5 none"), "{}", stderr(&o));
}

#[test]
fn search_without_symmetry() {
    let o = ramsey(&[
        "search",
        "-t",
        "3",
        "-m",
        "2,3,3",
        "--symmetry-depth",
        "0",
        "--jobs",
        "1",
    ]);
    assert!(stdout(&o).starts_with("R = 4 (exact)"));
}

#[test]
fn tables() {
    let o = ramsey(&["table", "-t", "3", "--m-max", "3", "--oracle-check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,stars,s,R,rule,oracle");
    assert_eq!(lines.len(), 11);
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")), "{out}");
    assert!(out.contains("\n3,3:3:3,-,5,even-x,ok\n"));

    let o = ramsey(&[
        "table",
        "-t",
        "3",
        "--m-max",
        "3",
        "--s-max",
        "2",
        "--oracle-check",
    ]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 6 * 2);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",ok")), "{out}");

    let o = ramsey(&["table", "-t", "3", "--m-min", "4", "--m-max", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ramsey(&[
        "table", "-t", "3", "--m-max", "3", "--s-min", "3", "--s-max", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = ramsey(&["table", "-t", "2", "--m-max", "3"]);
    assert!(stdout(&o)
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",unchecked")));
}

#[test]
fn random_certificates() {
    let a = stdout(&ramsey(&["random", "-n", "6", "-t", "3", "--seed", "42"]));
    let b = stdout(&ramsey(&["random", "-n", "6", "-t", "3", "--seed", "42"]));
    assert_eq!(a, b);
    let c = read_coloring(&a).unwrap();
    assert_eq!((c.n(), c.t()), (6, 3));
    let p = Parameters::normalize(3, &[1, 1, 1], None).unwrap();
    assert!(!checker::coloring_arrives(&c, &p.targets()).avoids());
}
