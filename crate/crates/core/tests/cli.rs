use std::io::Write;
use std::process::{Command, Output};

use lamlab::bench::{rows_from_csv, rows_from_json, RowStatus, Strategy};

fn lamlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamlab")).args(args).output().expect("spawn lamlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(lamlab(&["reduce", "two I"]).status.code(), Some(0));
    assert_eq!(lamlab(&["reduce", "--fuel", "3", "(\\x. x x) (\\x. x x)"]).status.code(), Some(2));
    assert_eq!(lamlab(&["reduce", "(\\x. x"]).status.code(), Some(1));
    assert_eq!(lamlab(&["reduce", "--strategy", "bogus", "I"]).status.code(), Some(1));
    assert_eq!(lamlab(&["degree", "\\x. x x"]).status.code(), Some(1));
}

#[test]
fn every_strategy_normalizes_two_i() {
    for &s in Strategy::ALL {
        let o = lamlab(&["reduce", "--strategy", s.name(), "--emit", "json", "two I"]);
        assert_eq!(o.status.code(), Some(0), "{s}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "normalized");
        assert_eq!(v["strategy"], s.name());
    }
}

#[test]
fn bench_csv_and_json_agree() {
    let args = ["bench", "--family", "term1", "--n", "2..4", "--strategy", "cbneed,optimal"];
    let csv = lamlab(&[&args[..], &["--emit", "csv"]].concat());
    let json = lamlab(&[&args[..], &["--emit", "json"]].concat());
    let a = rows_from_csv(&stdout(&csv)).unwrap();
    let b = rows_from_json(&stdout(&json)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 6);
    assert!(a.iter().all(|r| r.status == RowStatus::Normalized && r.wall_time == 0));
    let need: Vec<u64> = a.iter().filter(|r| r.strategy == Strategy::Cbneed).map(|r| r.identity_firings).collect();
    assert_eq!(need, [4, 8, 16]);
}

#[test]
fn definitions_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "K = \\x y. x;\nKI = K I;").unwrap();
    let path = f.path().to_str().unwrap();
    let o = lamlab(&["reduce", "--defs", path, "KI z"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: \\"), "{}", stdout(&o));
    assert_eq!(lamlab(&["reduce", "--defs", "/nonexistent/defs", "I"]).status.code(), Some(1));
}

#[test]
fn families_and_dot() {
    let o = lamlab(&["families", "--emit", "json", "(\\x. x x) ((\\z. z y) (\\w. w))"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distinct_families"], 3);
    let dot = stdout(&lamlab(&["dot", "--stage", "normal", "two I"]));
    assert!(dot.starts_with("graph net {"));
}
