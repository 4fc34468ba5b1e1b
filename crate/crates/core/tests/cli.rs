use std::io::Write;
use std::process::{Command, Output, Stdio};

fn termbridge(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_termbridge"))
        .args(args)
        .env("TERMBRIDGE_LOG_LEVEL", "error")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn zoo() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/zoo.pl").to_string()
}

#[test]
fn query_subcommand() {
    let o = termbridge(&["query", "--consult", &zoo(), "--all", "dark(X)"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X = cat\n;\nX = bear\n");

    let o = termbridge(&["query", "-c", &zoo(), "-n", "1", "big(X), \\+ dark(X)"], "");
    assert_eq!(stdout(&o), "X = elephant\n");

    let o = termbridge(&["query", "atom_length_missing(x)"], "");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false.\n");

    let o = termbridge(&["query", "--host", "X = 'hello world'"], "");
    assert_eq!(stdout(&o), "X = hello world\n");

    let o = termbridge(&["query", "X is foo"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn consult_subcommand() {
    let o = termbridge(&["consult", &zoo()], "");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("8 clauses, 6 predicates"), "{out}");
    assert!(out.contains("dark/1: 2"));
    assert_eq!(termbridge(&["consult", "/no/such.pl"], "").status.code(), Some(2));
}

#[test]
fn repl_subcommand() {
    let session = "likes(mary, wine).\nlikes(john,\n  mary).\n?- likes(Who, What).\n;\n?- likes(x, y).\nhalt.\n";
    let o = termbridge(&["repl"], session);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "?- true.\n?- true.\n?- Who = mary,\nWhat = wine\nWho = john,\nWhat = mary.\n?- false.\n?- "
    );
}

#[test]
fn bench_subcommand_csv() {
    let o = termbridge(
        &["bench", "--names", "cut_100_times,bench_query", "--iterations", "3", "--warmup", "1", "--format", "csv"],
        "",
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["benchmark", "min", "ave", "max", "error", "stdev"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][0], "cut_100_times");
    for row in &rows {
        let v: Vec<f64> = (1..6).map(|i| row[i].parse().unwrap()).collect();
        assert!(v[0] > 0.0 && v[0] <= v[1] && v[1] <= v[2], "{row:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(termbridge(&["bench", "--names", "nope"], "").status.code(), Some(2));
    assert_eq!(termbridge(&["query"], "").status.code(), Some(2));
    assert_eq!(termbridge(&["--log-level", "loud", "query", "true"], "").status.code(), Some(2));
    let o = termbridge(&["--help"], "");
    assert!(o.status.success());
    for cmd in ["repl", "consult", "query", "bench"] {
        assert!(stdout(&o).contains(cmd));
    }
}
