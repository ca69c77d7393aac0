use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const CONJ: &str = r#"{"worlds": ["w00", "w10", "w01", "w11"],
  "issues": [{"name": "p", "worlds": [1, 3]}, {"name": "q", "worlds": [2, 3]}, {"name": "c", "worlds": [3]}],
  "auto_close": true}"#;
const BICOND: &str = r#"{"atoms": ["p", "q"], "formulas": ["p", "q", "p <-> q"]}"#;
const ALG3: &str = r#"{"worlds": ["1", "2", "3"],
  "issues": [{"worlds": ["1"]}, {"worlds": ["2"]}, {"worlds": ["3"]}], "auto_close": true}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn binagg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binagg")).args(args).output().unwrap()
}

fn run_on(path: &Path, args: &[&str]) -> Output {
    let mut all = vec![args[0], path.to_str().unwrap()];
    all.extend_from_slice(&args[1..]);
    binagg(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_conj_reports_median_point() {
    let d = Dir::new();
    let o = run_on(&d.file("conj.json", CONJ), &["classify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("median points {w00}"), "{text}");
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 3, "{text}");
    assert!(rows.iter().all(|r| r.split_whitespace().nth(3) == Some("no")), "{text}");
}

#[test]
fn classify_json_is_deterministic() {
    let d = Dir::new();
    let path = d.file("bicond.json", BICOND);
    let first = run_on(&path, &["classify", "--json"]);
    let second = run_on(&path, &["classify", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let v = json(&first);
    let applies: Vec<bool> = v["results"].as_array().unwrap().iter().map(|r| r["applies"].as_bool().unwrap()).collect();
    assert_eq!(applies, [false, true, true]);
    assert_eq!(v["flags"]["median_points"], Value::Array(vec![]));
    assert_eq!(v["blocking_cycle"]["issue"], "p");
}

#[test]
fn alg3_satisfies_every_row() {
    let d = Dir::new();
    let v = json(&run_on(&d.file("alg3.json", ALG3), &["classify", "--json"]));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["applies"] == true));
}

#[test]
fn bicond_path_has_two_hops() {
    let d = Dir::new();
    let path = d.file("bicond.json", BICOND);
    let o = run_on(&path, &["path", "--from", "p", "--to", "~p"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 hops"), "{}", stdout(&o));
    let v = json(&run_on(&path, &["path", "--from", "p", "--to", "~p", "--json"]));
    let hops = v["path"].as_array().unwrap();
    assert_eq!(hops.len(), 2);
    assert_eq!(hops[1]["to"], "~p");
    assert_eq!(hops[1]["given"], serde_json::json!(["~(p <-> q)"]));
}

#[test]
fn path_accepts_indices() {
    let d = Dir::new();
    let v = json(&run_on(&d.file("bicond.json", BICOND), &["path", "--from", "0", "--to", "1", "--json"]));
    assert_eq!(v["from"], "p");
    assert_eq!(v["to"], "~p");
}

#[test]
fn names_win_over_indices_with_a_warning() {
    let d = Dir::new();
    let path = d.file(
        "named.json",
        r#"{"worlds": 3, "issues": [{"name": "a", "worlds": [0]}, {"name": "0", "worlds": [1, 2]}]}"#,
    );
    let o = run_on(&path, &["path", "--from", "0", "--to", "a", "--json"]);
    assert_eq!(json(&o)["from"], "0");
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
}

#[test]
fn invalid_agendas_exit_2() {
    let d = Dir::new();
    let cases = [
        (r#"{"worlds": 3, "issues": [{"worlds": []}], "auto_close": true}"#, "non-contingent issue"),
        (r#"{"worlds": 3, "issues": [{"worlds": [0]}]}"#, "complement"),
        (r#"{"worlds": 3, "issues": [{"worlds": [7]}]}"#, "not in the universe"),
        (r#"{"atoms": ["p"], "formulas": ["p &"]}"#, "offset 3"),
        (r#"{"atoms": ["p"], "formulas": ["p | ~p"]}"#, "non-contingent issue"),
        (r#"{"worlds": 3}"#, "issues"),
    ];
    for (text, needle) in cases {
        let o = run_on(&d.file("bad.json", text), &["analyze"]);
        assert_eq!(o.status.code(), Some(2), "{text}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
    }
}

#[test]
fn usage_and_parse_errors_exit_1() {
    assert_eq!(binagg(&["bogus"]).status.code(), Some(1));
    assert_eq!(binagg(&["analyze", "/nonexistent/agenda.json"]).status.code(), Some(1));
    let d = Dir::new();
    assert_eq!(run_on(&d.file("x.json", "{not json"), &["analyze"]).status.code(), Some(1));
    let conj = d.file("conj.json", CONJ);
    assert_eq!(run_on(&conj, &["path", "--from", "zz", "--to", "p"]).status.code(), Some(1));
    assert_eq!(run_on(&conj, &["check-rule", "--rule", "oligarchy"]).status.code(), Some(1));
    assert_eq!(run_on(&conj, &["check-rule", "--rule", "trivial", "--axioms", "xyz"]).status.code(), Some(1));
    assert_eq!(binagg(&["--help"]).status.code(), Some(0));
}

#[test]
fn limits_exit_3() {
    assert_eq!(binagg(&["verify-lemmas", "--worlds", "5"]).status.code(), Some(3));
    let d = Dir::new();
    let path = d.file("big.json", r#"{"atoms": ["a", "b", "c", "d", "e", "f"], "formulas": ["a"]}"#);
    assert_eq!(run_on(&path, &["analyze"]).status.code(), Some(3));
}

#[test]
fn mis_json_lists_conj_family() {
    let d = Dir::new();
    let v = json(&run_on(&d.file("conj.json", CONJ), &["mis", "--json"]));
    assert_eq!(v["count"], 6);
    assert_eq!(v["mis"][5], serde_json::json!(["p", "q", "~c"]));
}

#[test]
fn discursive_dilemma_profile() {
    let d = Dir::new();
    let conj = d.file("conj.json", CONJ);
    let profile = d.file(
        "dd.json",
        r#"{"masses": [[[0,1],[0,1],[0,1],[1,1]], [[0,1],[1,1],[0,1],[0,1]], [[0,1],[0,1],[1,1],[0,1]]]}"#,
    );
    let v = json(&run_on(
        &conj,
        &[
            "check-rule",
            "--rule",
            "threshold",
            "--threshold",
            "1/2",
            "--strict",
            "--profile",
            profile.to_str().unwrap(),
            "--json",
        ],
    ));
    assert_eq!(v["accepted"], serde_json::json!(["p", "q", "~c"]));
    assert_eq!(v["consistent"], false);
    assert_eq!(v["closure_witness"], "~p");
}

fn accepted_on(agenda: &Path, d: &Dir, rule: &[&str], profile: &Value) -> Value {
    let path = d.file("witness.json", &profile.to_string());
    let mut args = vec!["check-rule"];
    args.extend_from_slice(rule);
    args.extend_from_slice(&["--profile", path.to_str().unwrap(), "--json"]);
    json(&run_on(agenda, &args))
}

#[test]
fn anonymity_witness_replays() {
    let d = Dir::new();
    let conj = d.file("conj.json", CONJ);
    let rule = ["--rule", "oligarchy", "--members", "1"];
    let mut args = vec!["check-rule"];
    args.extend_from_slice(&rule);
    args.extend_from_slice(&["--grid", "2", "--axioms", "cp,zp,an,ind,sys,mon,cdc,ccs", "--json"]);
    let v = json(&run_on(&conj, &args));
    assert_eq!(v["evidence_only"], true);
    let verdicts = v["verdicts"].as_array().unwrap();
    for row in verdicts {
        assert_eq!(row["verdict"], if row["axiom"] == "AN" { "fail" } else { "pass" }, "{row}");
    }
    let w = &verdicts.iter().find(|r| r["axiom"] == "AN").unwrap()["witness"];
    let issue = w["issue"].as_str().unwrap();
    let before = accepted_on(&conj, &d, &rule, &w["profile"]);
    let after = accepted_on(&conj, &d, &rule, &w["permuted_profile"]);
    let has = |v: &Value| v["accepted"].as_array().unwrap().iter().any(|x| x == issue);
    assert_ne!(has(&before), has(&after));
}

#[test]
fn consistency_witness_replays_on_alg3() {
    let d = Dir::new();
    let alg3 = d.file("alg3.json", ALG3);
    let rule = ["--rule", "threshold", "--strict"];
    let mut args = vec!["check-rule"];
    args.extend_from_slice(&rule);
    args.extend_from_slice(&["--grid", "1", "--axioms", "ccs", "--json"]);
    let v = json(&run_on(&alg3, &args));
    let w = &v["verdicts"][0]["witness"];
    assert_eq!(w["kind"], "belief");
    let replayed = accepted_on(&alg3, &d, &rule, &w["profile"]);
    assert_eq!(replayed["consistent"], false);
    assert_eq!(replayed["accepted"], w["accepted"]);
}

#[test]
fn facts_on_extracted_table() {
    let d = Dir::new();
    let v = json(&run_on(
        &d.file("conj.json", CONJ),
        &["check-rule", "--rule", "oligarchy", "--members", "1,3", "--axioms", "cp", "--facts", "--json"],
    ));
    for f in ["fact1", "fact2", "fact1pp"] {
        assert_eq!(v["facts"][f]["verdict"], "pass");
    }
}

#[test]
fn search_separates_conj_from_alg3() {
    let d = Dir::new();
    let conj = json(&run_on(&d.file("conj.json", CONJ), &["search", "--json"]));
    assert!(conj["non_oligarchic"].as_u64().unwrap() >= 1);
    assert!(conj["example"].is_array());
    let alg3 = json(&run_on(&d.file("alg3.json", ALG3), &["search", "--json"]));
    assert_eq!(alg3["non_oligarchic"], 0);
    assert!(alg3["passing"].as_u64().unwrap() > 0);
}

#[test]
fn verify_lemmas_clean_run() {
    let o = binagg(&["verify-lemmas", "--worlds", "3", "--max-pairs", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("7 agendas, 1 algebras"), "{}", stdout(&o));
    let v = json(&binagg(&["verify-lemmas", "--worlds", "3,4", "--json"]));
    assert_eq!(v["agendas"], 70);
    assert_eq!(v["findings"], Value::Array(vec![]));
}
