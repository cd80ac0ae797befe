use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run_args(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confmach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn confmach(cmd: &str) -> Output {
    run_args(&cmd.split_whitespace().collect::<Vec<_>>())
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn run_file(machine: &str, path: &Path, args: &str) -> String {
    let mut argv = vec![
        "run",
        "--machine",
        machine,
        "--file",
        path.to_str().unwrap(),
    ];
    argv.extend(args.split_whitespace());
    stdout(&run_args(&argv))
}

fn source(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("confmach-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn pairing_commands() {
    assert_eq!(stdout(&confmach("pair 2 1")), "7");
    assert_eq!(stdout(&confmach("unpair 7")), "2 1");
    assert_eq!(stdout(&confmach("encode 1 1 1")), "19");
    assert_eq!(stdout(&confmach("decode 19")), "1 1 1");
    assert_eq!(stdout(&confmach("encode")), "0");
}

#[test]
fn run_examples() {
    let out = confmach("run --machine urcm --code 3 5");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "6");
    assert_eq!(stdout(&confmach("run --machine tcm --code 0 2")), "3");
    let json = confmach("--format json eval --machine urcm --code 3 5");
    assert_eq!(stdout(&json), r#"{"value":"6"}"#);
}

#[test]
fn exit_codes() {
    let diverged = confmach("run --machine urcm --code 10 0 --fuel 50");
    assert_eq!(diverged.status.code(), Some(4));
    assert_eq!(stdout(&diverged), "DIVERGED(50)");

    let guard = confmach("run --machine tcm --code 0 64");
    assert_eq!(guard.status.code(), Some(3));
    let small = confmach("--max-bits 8 pair 100 100");
    assert_eq!(small.status.code(), Some(3));

    assert_eq!(confmach("pair -1 2").status.code(), Some(2));
    let bad = source("bad.urm", "S 1\nQ 2\n");
    let out = run_args(&["asm", "--machine", "urcm", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn assembled_code_runs_like_the_file() {
    let adder = source("adder.urm", "J 3 2 5\nS 1\nS 3\nJ 1 1 1\n");
    let path = adder.to_str().unwrap();
    let asm = stdout(&run_args(&["asm", "--machine", "urcm", "--file", path]));
    let code = asm
        .lines()
        .find_map(|l| l.strip_prefix("code "))
        .expect("code line")
        .to_string();
    for (x, y) in [(0, 0), (3, 4), (7, 2)] {
        let (x, y) = (x.to_string(), y.to_string());
        let by_code = run_args(&["run", "--machine", "urcm", "--code", &code, &x, &y]);
        let by_file = run_args(&["run", "--machine", "urcm", "--file", path, &x, &y]);
        assert_eq!(stdout(&by_code), stdout(&by_file));
    }
    assert_eq!(run_file("urcm", &adder, "3 4"), "7");
}

#[test]
fn tm_and_abacus_sources() {
    let tm = source("adder.tm", "0 1 -> W0 1\n1 0 -> R 1\n1 1 -> W0 2\n");
    assert_eq!(run_file("tcm", &tm, "3 4"), "7");

    let abacus = source("adder.ab", "0: DEC 1 -> 1 / 2\n1: INC 0 -> 0\n");
    assert_eq!(run_file("acm", &abacus, "2 5"), "7");
}

#[test]
fn trace_ends_terminal() {
    let out = confmach("--format json trace --machine urcm --code 3 5");
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["terminal"], true);
    assert_eq!(lines[0]["instruction"], "2");
}

#[test]
fn diff_reports_every_case() {
    for machine in ["urcm", "acm", "tcm"] {
        let out = run_args(&["diff", "--machine", machine, "--count", "20", "--seed", "3"]);
        assert!(out.status.success(), "{machine}");
        let text = stdout(&out);
        assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 21);
        assert_eq!(text.lines().last(), Some("20 PASS"));
    }
}
