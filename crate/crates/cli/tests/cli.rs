use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn iuc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iuc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const C4: &str = "c four cycle\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

#[test]
fn solve_and_oracle_agree_on_c4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.dimacs", C4);
    let s = iuc(&["solve", &f]);
    assert!(s.status.success());
    let v = json_of(&s);
    assert_eq!(v["best_value"], 2);
    assert_eq!(v["status"], "Optimal");
    let o = iuc(&["oracle", &f]);
    assert_eq!(json_of(&o)["value"], 2);
}

#[test]
fn cuts_close_the_c4_gap_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.dimacs", C4);
    let out = iuc(&["cuts", &f, "--rational", "--list"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["root_lp_base"], "8/3");
    assert_eq!(v["root_lp_with_cuts"], "2");
    assert_eq!(v["inequalities"][0], "Hole; 2; 0:1,1:1,2:1,3:1");
}

#[test]
fn gen_writes_instance_pair() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("w9");
    let out = iuc(&[
        "gen",
        "--out",
        stem.to_str().unwrap(),
        "structure",
        "--kind",
        "wheel",
        "--size",
        "9",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let dimacs = fs::read_to_string(stem.with_extension("dimacs")).unwrap();
    assert!(dimacs.contains("p edge 9 16"));
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(stem.with_extension("json")).unwrap()).unwrap();
    assert!(meta.is_object());
    let solved = iuc(&["solve", stem.with_extension("dimacs").to_str().unwrap()]);
    assert_eq!(json_of(&solved)["best_value"], 5);
}

#[test]
fn gen_er_is_reproducible() {
    let a = iuc(&["gen", "er", "--n", "20", "--p", "0.3", "--seed", "5"]);
    let b = iuc(&["gen", "er", "--n", "20", "--p", "0.3", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn face_report_for_hole() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "c5.dimacs",
        "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n",
    );
    let out = iuc(&[
        "certify",
        "face",
        &f,
        "--ineq",
        "Hole; 3; 0:1,1:1,2:1,3:1,4:1",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["is_facet"], true);
}

#[test]
fn complete_description_on_k23() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "k23.dimacs",
        "p edge 5 6\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\n",
    );
    let out = iuc(&[
        "certify",
        "complete",
        &f,
        "--family",
        "double-stars",
        "--trials",
        "5",
    ]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["failures"], 0);
}

#[test]
fn bench_csv_has_frozen_header() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.dimacs", C4);
    let csv = dir.path().join("out.csv");
    let out = iuc(&[
        "bench",
        "--arms",
        "Base,+All",
        "--csv",
        csv.to_str().unwrap(),
        "files",
        &f,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("instance,arm,n,m,open_triangles"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.dimacs", "p edge 3 1\ne 1 9\n");
    assert_eq!(iuc(&["solve", &bad]).status.code(), Some(2));
    let big = gen_big(dir.path());
    assert_eq!(iuc(&["oracle", &big]).status.code(), Some(3));
    let missing = dir.path().join("nope.dimacs");
    assert_eq!(
        iuc(&["oracle", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

fn gen_big(dir: &Path) -> String {
    let out = iuc(&["gen", "er", "--n", "70", "--p", "0.1", "--seed", "1"]);
    write(dir, "big.dimacs", &String::from_utf8(out.stdout).unwrap())
}

#[test]
fn limits_report_status_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = iuc(&["gen", "er", "--n", "40", "--p", "0.3", "--seed", "2"]);
    let f = write(
        dir.path(),
        "er.dimacs",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let r = iuc(&["solve", &f, "--cuts", "none", "--node-limit", "3"]);
    assert_eq!(r.status.code(), Some(3));
    let v = json_of(&r);
    assert_eq!(v["status"], "NodeLimit");
    assert!(v["best_bound"].as_f64().unwrap() >= v["best_value"].as_f64().unwrap());
}
