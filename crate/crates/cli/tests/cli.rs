use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use toric_ko::library::BUNDLED;
use toric_ko::problem::parse_spec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-ko"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const BAD_DETERMINANT: &str = "n = 2\nm = 4\nfacet: 1 2\nfacet: 2 3\nfacet: 3 4\nfacet: 4 1\nlambda: 1 0 1 0\nlambda: 0 1 0 2\n";

#[test]
fn validate_bundled() {
    let o = run(&["validate", "@cube"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: cube"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", "/nonexistent/file.toric"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "@nope"]).status.code(), Some(1));

    let o = run_stdin(&["validate", "-"], BAD_DETERMINANT);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("charfun"), "{}", stderr(&o));

    let o = run_stdin(&["report", "-"], "n = 2\nm = x\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = run(&["ko", "@singular_cp1x6"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("E2 bound"));
}

#[test]
fn json_outputs_parse() {
    for cmd in ["validate", "cohomology", "decompose", "ko", "report", "chart"] {
        let o = run(&[cmd, "@square_cp2cp2", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        assert!(v.is_object(), "{cmd}");
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["report", "@cube", "--format", "json"]))).unwrap();
    assert_eq!(v["results"]["decomposition"]["formula"], "S0 ⊕ Σ^2 S0 ⊕ Σ^4 S0 ⊕ Σ^6 S0 ⊕ 2Σ^2 M");
    assert_eq!(v["results"]["spin"]["spin"], true);
}

#[test]
fn charts() {
    let o = run(&["chart", "--s0", "--max-stem", "10", "--max-filt", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Ext(S0)"));
    let o = run(&["chart", "--m", "--format", "svg"]);
    assert!(stdout(&o).starts_with("<svg"));
    let o = run(&["chart", "@simplex2", "--max-stem", "6"]);
    assert!(stdout(&o).contains("stems 0..6"));
    assert_eq!(run(&["chart"]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("toric-ko-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cube.svg");
    let o = run(&["report", "@cube", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("<circle"));

    let o = run(&["examples", "write", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for b in BUNDLED {
        let text = std::fs::read_to_string(dir.join(format!("{}.toric", b.name))).unwrap();
        assert_eq!(text, b.text);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn examples_round_trip_through_stdin() {
    let names = stdout(&run(&["examples", "list"]));
    assert_eq!(names.lines().count(), BUNDLED.len());

    let text = stdout(&run(&["examples", "polygon", "7", "--seed", "5"]));
    assert_eq!(text, stdout(&run(&["examples", "polygon", "7", "--seed", "5"])));
    parse_spec(&text).unwrap();
    assert_eq!(run_stdin(&["validate", "-"], &text).status.code(), Some(0));

    let prod = stdout(&run(&["examples", "product", "@interval", "@simplex2"]));
    let spec = parse_spec(&prod).unwrap();
    assert_eq!((spec.n, spec.m), (3, 5));
    let o = run_stdin(&["cohomology", "-"], &prod);
    assert!(stdout(&o).contains("H^6  = Z"));

    assert_eq!(run(&["examples", "polygon", "2"]).status.code(), Some(2));
    assert!(stdout(&run(&["examples", "simplex", "3"])).contains("n = 3"));
}

#[test]
fn mode_flag_overrides_file() {
    let o = run(&["ko", "@cp1xcp2", "--mode", "singular"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["report", "@singular_cp1x6", "--mode", "manifold", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_bundled_report_is_fast_and_deterministic() {
    for b in BUNDLED {
        let name = format!("@{}", b.name);
        let start = Instant::now();
        let first = run(&["report", &name, "--format", "json"]);
        assert!(start.elapsed() < Duration::from_secs(5), "{}", b.name);
        let second = run(&["report", &name, "--format", "json"]);
        assert_eq!(first.stdout, second.stdout, "{}", b.name);
        assert!(matches!(first.status.code(), Some(0) | Some(4)));
    }
}
