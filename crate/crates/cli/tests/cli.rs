use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).expect("write system file");
        path
    }
}

fn covereq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covereq"))
        .args(args)
        .output()
        .expect("run covereq")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = covereq(args);
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

#[test]
fn equiv_exit_codes() {
    let ws = Workspace::new();
    let one = ws.file("one.sys", "0 (1)\n");
    let two = ws.file("two.sys", "0 (2)\n1 (2)\n");
    let a = ws.file("a.sys", "0(2)\n");
    let b = ws.file("b.sys", "1(2)\n");

    let (code, out) = run(&["equiv", p(&one), p(&two)]);
    assert_eq!(code, 0);
    assert_eq!(out, "equivalent (p=3, |S|=2)\n");

    let (code, out) = run(&["equiv", p(&a), p(&b)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("not equivalent"));

    let missing = ws.dir.path().join("missing.sys");
    let (code, out) = run(&["equiv", p(&missing), p(&b)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
}

#[test]
fn equiv_witness_and_oracle() {
    let ws = Workspace::new();
    let a = ws.file("a.sys", "0(2)\n");
    let b = ws.file("b.sys", "1(2)\n");
    let (code, out) = run(&["equiv", p(&a), p(&b), "--witness", "--oracle"]);
    assert_eq!(code, 1);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "not equivalent (p=3, |S|=2)");
    assert!(lines[1].starts_with("sum="));
    // two coefficients in Q(ζ_3)
    assert_eq!(lines[2].split_whitespace().count(), 3);
    assert_eq!(lines[3], "oracle: agrees");
}

#[test]
fn oracle_skips_huge_periods() {
    let ws = Workspace::new();
    let a = ws.file("a.sys", "0(1)\n");
    let b = ws.file("b.sys", "0(2)\n1(2)\n");
    let (code, out) = run(&["equiv", p(&a), p(&b), "--oracle", "--max-period", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle: skipped (period 2 exceeds 1)"));
}

#[test]
fn prime_override() {
    let ws = Workspace::new();
    let one = ws.file("one.sys", "0(1)\n");
    let two = ws.file("two.sys", "0(2)\n1(2)\n");
    let (code, out) = run(&["equiv", p(&one), p(&two), "--prime", "7"]);
    assert_eq!((code, out.as_str()), (0, "equivalent (p=7, |S|=2)\n"));
    // not above |S|, and composite
    assert_eq!(run(&["equiv", p(&one), p(&two), "--prime", "2"]).0, 2);
    assert_eq!(run(&["equiv", p(&one), p(&two), "--prime", "9"]).0, 2);
}

#[test]
fn parse_errors_name_the_line() {
    let ws = Workspace::new();
    let bad = ws.file("bad.sys", "# header\n0(2)\n1(0)\n");
    let good = ws.file("good.sys", "0(1)\n");
    let out = covereq(&["equiv", p(&bad), p(&good)]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn exact_cover() {
    let ws = Workspace::new();
    let cover = ws.file("cover.sys", "0(2)\n1(4)\n3(4)\n");
    let doubled = ws.file("doubled.sys", "0(2)\n1(2)\n0(2)\n1(2)\n");
    let half = ws.file("half.sys", "0(2)\n");
    let weighted = ws.file("weighted.sys", "2 * 0(2)\n");
    let (code, out) = run(&["exact-cover", p(&cover), "1", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out, "exact 1-cover (p=5, |S|=4)\noracle: agrees\n");
    assert_eq!(run(&["exact-cover", p(&doubled), "2"]).0, 0);
    assert_eq!(run(&["exact-cover", p(&half), "1"]).0, 1);
    assert_eq!(run(&["exact-cover", p(&weighted), "1"]).0, 2);
}

#[test]
fn table() {
    let ws = Workspace::new();
    let five = ws.file("five.sys", "0(2)\n0(3)\n1(4)\n5(6)\n7(12)\n");
    let empty = ws.file("empty.sys", "");
    let huge = ws.file("huge.sys", "1(999983)\n1(999979)\n2(999961)\n");
    assert_eq!(run(&["table", p(&five)]), (0, "L=12: 2 1 1 1 1 2 2 1 1 2 1 1\n".into()));
    assert_eq!(run(&["table", p(&empty)]), (0, "L=1: 0\n".into()));
    let out = covereq(&["table", p(&huge)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("999923001838986077"));
    assert_eq!(run(&["table", p(&five), "--max-period", "11"]).0, 2);
}

#[test]
fn sset() {
    let ws = Workspace::new();
    let s23 = ws.file("s23.sys", "0(2)\n1(3)\n");
    let s24 = ws.file("s24.sys", "0(2)\n1(4)\n");
    let s7 = ws.file("s7.sys", "3(7)\n");
    let empty = ws.file("empty.sys", "# nothing\n");
    assert_eq!(run(&["sset", p(&s23)]), (0, "|S|=4 p=5\n".into()));
    assert_eq!(run(&["sset", p(&s24)]), (0, "|S|=4 p=5\n".into()));
    assert_eq!(run(&["sset", p(&s7)]), (0, "|S|=7 p=11\n".into()));
    assert_eq!(
        run(&["sset", p(&s23), "--list"]),
        (0, "|S|=4 p=5\n0\n1/3\n1/2\n2/3\n".into())
    );
    assert_eq!(run(&["sset", p(&empty)]).0, 2);
}

#[test]
fn example_composite() {
    let (code, out) = run(&["example-composite", "4", "2", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 0(3), 2(3)\n"));
    assert!(out.contains("sum=0\n"));
    assert!(out.contains("|S|=3<4\n"));
    let (code, out) = run(&["example-composite", "6", "3", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 0(5), 2(5), 4(5)\n"));
    assert_eq!(run(&["example-composite", "5", "2", "3"]).0, 2);
    assert_eq!(run(&["example-composite", "4", "2", "4"]).0, 2);
}

#[test]
fn go_search() {
    for q in ["3", "4"] {
        let (code, out) = run(&["go-search", q, "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().last().unwrap(), format!("CONJECTURE HOLDS at q={q} k≤2"));
    }
    assert_eq!(run(&["go-search", "1", "2"]).0, 2);
    let (code, out) = run(&["go-search", "10", "3", "--budget-seconds", "0"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("PARTIAL"));
}

#[test]
fn go_search_progress_goes_to_stderr() {
    let out = covereq(&["go-search", "5", "2"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stdout.lines().all(|l| l.starts_with("q=5 ") || l.starts_with("CONJECTURE")));
    assert!(stderr.lines().count() > 0);
}

#[test]
fn output_is_deterministic() {
    let ws = Workspace::new();
    let a = ws.file("a.sys", "1(3)\n2 * 0(4)\n-1 * 5(6)\n");
    let b = ws.file("b.sys", "1(6)\n4(6)\n0(4)\n0(8)\n4(8)\n");
    let queries: [Vec<&str>; 3] = [
        vec!["equiv", p(&a), p(&b), "--witness"],
        vec!["table", p(&a)],
        vec!["go-search", "7", "3"],
    ];
    for args in &queries {
        assert_eq!(covereq(args).stdout, covereq(args).stdout, "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(covereq(&[]).status.code(), Some(2));
    assert_eq!(covereq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(covereq(&["exact-cover", "x.sys", "not-a-number"]).status.code(), Some(2));
}
