use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbraid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn braid_eq_verdicts() {
    let o = run(&["braid", "eq", "-m", "3", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("equal", Some(0)));
    let o = run(&["braid", "eq", "-m", "3", "s1 s2", "s2 s1"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("unequal", Some(1)));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["braid", "eq", "-m", "3", "s1 x", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["braid", "eq", "-m", "3", "s5", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["braid", "frobnicate"]).status.code(), Some(2));
    let o = run(&["hecke", "reduce", "-g", "1", "-n", "2", "q*[s2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 6"));
}

#[test]
fn worked_examples() {
    let o = run(&["pure", "comb", "-m", "3", "--mode", "vertical", "a1.2 a1.3"]);
    assert_eq!(stdout(&o), "u3 = a2.3^-1 a1.3 a2.3\nu2 = a1.2\n");
    let o = run(&["wreath", "nf", "-g", "1", "-n", "2", "t1 s2 t1 s2^-1"]);
    assert_eq!(stdout(&o), "h1=b1.2 h2=b1.3 perm=id\n");
    let o = run(&["check", "presentation", "-g", "1", "-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("all "));
    assert_eq!(stdout(&run(&["braid", "perm", "-m", "3", "s1 s2"])).trim(), "(1 2 3)");
    assert_eq!(stdout(&run(&["hb", "embed", "-g", "1", "-n", "2", "t1 s2"])).trim(), "s1 s1 s2");
    assert_eq!(stdout(&run(&["hb", "phi", "-g", "1", "-n", "2", "t1 s2 t1^-1"])).trim(), "s2");
    assert_eq!(stdout(&run(&["hb", "psi", "-g", "1", "-n", "3", "s2 s3"])).trim(), "(1 2 3)");
}

#[test]
fn rdecomp_certified() {
    let o = run(&["hb", "rdecomp", "-g", "2", "-n", "2", "t1 s3 t2 s3^-1 s3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("certificate: ok\n"));
}

#[test]
fn rule_checks() {
    let o = run(&["check", "rules", "-m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("conjugation rule instances hold"));
    assert!(text.contains("pure braid relation instances hold"));
}

#[test]
fn hecke_reduce() {
    let o = run(&["hecke", "reduce", "-g", "2", "-n", "2", "(q-1)*[s3] + q*[]"]);
    assert_eq!(stdout(&o).trim(), "q*[] + (q - 1)*[s3]");
    let o = run(&["hecke", "reduce", "-g", "1", "-n", "2", "[s2 s2]"]);
    assert_eq!(stdout(&o).trim(), "q*[] + (q - 1)*[s2]");
    let o = run(&["--format", "json", "hecke", "reduce", "-g", "1", "-n", "2", "t1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["text"], "[t1.2]");
    let o = run(&["hecke", "reduce", "-g", "1", "-n", "2", "--budget", "1", "s2 t1 s2 t1 s2 t1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn probe_json_is_reproducible() {
    let args = ["hecke", "probe", "-g", "1", "-n", "2", "--max-len", "3", "--seed", "5"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    for key in ["g", "n", "max_len", "total", "reduced", "failed", "collisions", "budget_exhausted", "samples"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["total"], 53);
    assert_eq!(v["reduced"], 53);
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn help_lists_conventions() {
    let o = run(&["--help"]);
    assert!(stdout(&o).contains("Conventions:"));
}
