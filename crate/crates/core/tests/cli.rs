//! End-to-end runs of the `posmt` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use posmt::amalgamation::{AmalgamationSolution, Outcome};
use posmt::theory::verdict::{Answer, Verdict};
use serde_json::Value;

fn sample() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data/posets.posmt")
        .display()
        .to_string()
}

fn posmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posmt"))
        .args(args)
        .env_remove("POSMT_NODE_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("posmt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn check_accepts_the_sample_file() {
    let o = posmt(&["check", &sample()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("OK")).count(), 8);
    assert!(out.contains("0 with errors"));
}

#[test]
fn syntax_error_exits_2_with_position() {
    let p = temp_file("bad.posmt", "signature s {\n  relations: r/2;\n}\nstructure a over s { universe: x; r: (x, ; }\n");
    let o = posmt(&["check", &p]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("4:"), "{err}");
    assert!(err.contains("bad.posmt"), "{err}");
}

#[test]
fn semantic_error_in_file_is_reported_per_object() {
    let p = temp_file("sem.posmt", "structure a over nowhere { universe: x; }\nstructure b over posets { universe: y; }\n");
    let o = posmt(&["check", &p]);
    assert_eq!(code(&o), 3);
    let out = stdout(&o);
    assert!(out.contains("ERROR structure a"), "{out}");
    assert!(out.contains("OK    structure b"), "{out}");
}

#[test]
fn unknown_names_exit_3() {
    let o = posmt(&["pc", "--structure", "nope", "--theory", "T_pos"]);
    assert_eq!(code(&o), 3);
    let o = posmt(&["--json", "amalgamate", "--left", "nope", "--right", "x"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["schema"], "posmt/1");
    assert_eq!(v["exit"], 3);
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(code(&posmt(&["pc", "--structure", "point", "--theory", "T_pos"])), 0);
    assert_eq!(code(&posmt(&["pc", "--structure", "chain2", "--theory", "T_pos"])), 1);
    assert_eq!(code(&posmt(&["jc", "--theory", "T_pos", "--node-cap", "5"])), 4);
}

#[test]
fn node_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_posmt"))
        .args(["jc", "--theory", "T_pos"])
        .env("POSMT_NODE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
}

#[test]
fn verdict_json_round_trips() {
    let o = posmt(&["--json", "pc", "--structure", "chain2", "--theory", "T_pos"]);
    let v = json(&o);
    assert_eq!(v["command"], "pc");
    let verdict: Verdict = serde_json::from_value(v["result"].clone()).expect("a verdict");
    assert_eq!(verdict.verdict, Answer::No);
    assert_eq!(serde_json::to_value(&verdict).unwrap(), v["result"]);
}

#[test]
fn amalgamation_json_carries_a_checkable_witness() {
    let o = posmt(&["-f", &sample(), "--json", "amalgamate", "--problem", "span"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let outcome: Outcome = serde_json::from_value(v["result"]["outcome"].clone()).expect("an outcome");
    let s: &AmalgamationSolution = outcome.solution().expect("solved");
    assert_eq!(s.out_left.len(), 3);
    assert_eq!(s.out_right.len(), 2);
    assert_eq!(s.disjoint, Some(true));
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in [
        vec!["verify", "--theorem", "si-si-strong", "--instances", "10", "--seed", "3"],
        vec!["jc", "--theory", "T_pos"],
        vec!["tcomplete", "--left", "T_fix1", "--right", "T_fix2", "--theory", "T_fix1"],
        vec!["basis", "--structure", "point", "--kinds", "[h,h,h,h]", "--class", "T_pos", "--strong"],
    ] {
        let run = |jobs: &str| {
            let mut a = vec!["--json", "--jobs", jobs];
            a.extend(args.iter().copied());
            let o = posmt(&a);
            (code(&o), o.stdout)
        };
        assert_eq!(run("1"), run("4"), "{args:?}");
    }
}

#[test]
fn homs_lists_kinds() {
    let o = posmt(&["homs", "--from", "chain2", "--to", "chain2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("strong immersion"), "{out}");
}

#[test]
fn diagram_of_a_file_structure() {
    let o = posmt(&["-f", &sample(), "diagram", "--structure", "line", "--kind", "diag-plus"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("leq(").count(), 3);
}

#[test]
fn theory_from_a_diagram_reference() {
    let o = posmt(&["companion", "--left", "tu-star:loop", "--right", "ti-star:loop", "--n", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
