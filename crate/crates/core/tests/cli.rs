use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fourcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourcalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const Z3: &str = "let A = block(\"S_hat\")  # S#CP2bar\nlet B = block(\"X\", 3, 1)\nlet Z = sum(A, \"Rtilde\", B, \"Sigma6\")\nassert Z.e == 52\n";

fn script(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn run_passing_script() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(dir.path(), "z3.fc", &format!("{Z3}print Z\n"));
    let o = fourcalc(&["run", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("ok Z.e == 52"));
    let json = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["e"], 52);
    assert_eq!(v["chi_h"], 13);
    assert_eq!(v["spin"], "nonspin");
    assert_eq!(v["pi1"], "trivial");
    assert_eq!(fourcalc(&["run", &f]).stdout, o.stdout);
}

#[test]
fn run_failing_assert() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(dir.path(), "bad.fc", &format!("{Z3}assert Z.e == 53\n"));
    let o = fourcalc(&["run", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("52 != 53"));
}

#[test]
fn run_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(dir.path(), "syntax.fc", "let = 3\n");
    let o = fourcalc(&["run", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:5"), "{}", stderr(&o));
    let f = script(dir.path(), "block.fc", "let A = block(\"Nope\")\n");
    let o = fourcalc(&["run", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:9") && stderr(&o).contains("Nope"));
    let o = fourcalc(&["run", dir.path().join("missing.fc").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_exits_zero() {
    let o = fourcalc(&["audit"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("M25.e") && l.contains("MISMATCH")));
    let o = fourcalc(&["audit", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let z3 = rows.iter().find(|r| r["claim_id"] == "Z3.e").unwrap();
    assert_eq!((z3["stated"].as_i64(), z3["computed"].as_i64(), z3["status"].as_str()), (Some(52), Some(52), Some("MATCH")));
    let m25 = rows.iter().find(|r| r["claim_id"] == "M25.e").unwrap();
    assert_eq!((m25["stated"].as_i64(), m25["computed"].as_i64(), m25["status"].as_str()), (Some(50), Some(58), Some("MISMATCH")));
}

#[test]
fn scan_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = fourcalc(&["scan", "--chi-min", "13", "--chi-max", "15", "--base", "Z3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("chi_h,c1_sq,realized,citation\n"));
    assert!(!text.contains('\r'));
    let realized: Vec<(i64, i64)> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(2) == Some("true"))
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect();
    let mut expected = vec![(13, 104)];
    for d in 1..=2 {
        expected.extend((0..=8 * d).map(|c| (13 + d, 104 + c)));
    }
    assert_eq!(realized, expected);

    let o = fourcalc(&["scan", "--chi-min", "13", "--chi-max", "15", "--base", "Z3"]);
    assert_eq!(o.status.code(), Some(2));

    let empty = dir.path().join("e.csv");
    let o = fourcalc(&["scan", "--chi-min", "3", "--chi-max", "2", "--out", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&empty).unwrap(), "chi_h,c1_sq,realized,citation\n");

    let o = fourcalc(&["scan", "--chi-min", "1", "--chi-max", "2", "--base", "Nope", "--out", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_lists_blocks() {
    let o = fourcalc(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["S_hat", "X_gg2", "Y_n_pq", "M25"] {
        assert!(out.contains(name), "{name}");
    }
}

#[test]
fn pi1_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(dir.path(), "p.txt", "gens: a b\nrels: [a,b], a^2 b^-1\n");
    let o = fourcalc(&["pi1", &f, "--abelianize"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z^1");
    let f = script(dir.path(), "t.txt", "gens: a b\nrels: a b^-1, b\n");
    let o = fourcalc(&["pi1", &f, "--simplify", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "trivial"));
    let o = fourcalc(&["pi1", &f, "--budget", "50"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = script(dir.path(), "bad.txt", "gens: a\nrels: b\n");
    assert_eq!(fourcalc(&["pi1", &bad]).status.code(), Some(2));
}
