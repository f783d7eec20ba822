use std::io::Write;
use std::process::{Command, Output};

use regexmend::corpus::{load_benchmark, run_harness, HarnessOptions};
use regexmend::{fitness, parse, syncorr, Engine, ExampleSet, RepairConfig};
use regexmend_testkit::{fixture, strip_timing};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_regexmend"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn check_verdicts() {
    let ok = run(&["check", "ab{1,3}"]);
    assert_eq!((ok.status.code(), ok.stdout.as_slice()), (Some(0), &b"valid\n"[..]));
    let bad = run(&["check", "ab{1,,,,3}"]);
    assert_eq!((bad.status.code(), bad.stdout.as_slice()), (Some(1), &b"invalid\n"[..]));
    assert_eq!(run(&["check"]).status.code(), Some(2));
}

#[test]
fn match_and_equiv() {
    let m = run(&["match", "a(b|c){2,}", "abcb"]);
    assert_eq!(m.status.code(), Some(0));
    assert_eq!(json(&m), serde_json::json!({"matches": true}));
    let m = run(&["match", "a(b|c){2,}", "ab"]);
    assert_eq!(m.status.code(), Some(1));
    assert_eq!(json(&m), serde_json::json!({"matches": false}));

    let eq = run(&["equiv", "a{1,}", "aa*"]);
    assert_eq!(eq.status.code(), Some(0));
    assert_eq!(json(&eq), serde_json::json!({"equivalent": true}));
    let ne = run(&["equiv", "a+", "a*"]);
    assert_eq!(ne.status.code(), Some(1));

    let err = run(&["equiv", "a(", "a"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(err.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&err.stderr).lines().count(), 1);
}

#[test]
fn fitness_of_vowel_candidate_is_zero() {
    let out = run(&["fitness", "([AEIOUaeiou].*[0-9].*){7,}", &path("vowel_digits_examples.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], "0");
    assert_eq!((v["tp"].as_u64(), v["fn"].as_u64(), v["tn"].as_u64()), (Some(0), Some(10), Some(10)));
    assert_eq!(run(&["fitness", "a", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn gen_is_seeded_and_consistent() {
    let args = ["gen", "[a-z]{2,4}[0-9]+", "--pos", "5", "--neg", "5", "--seed", "9", "--max-len", "12"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let ex: ExampleSet = serde_json::from_slice(&a.stdout).unwrap();
    let e = Engine::default();
    let r = parse("[a-z]{2,4}[0-9]+", e.alphabet()).unwrap();
    assert!(fitness(&e, &r, &ex).unwrap().is_perfect());
    assert_eq!(run(&["gen", "a&b"]).status.code(), Some(2));
}

#[test]
fn mutate_outputs_invalid_pairs() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "ab{{1,3}}\n[a-z]+@[a-z]+").unwrap();
    let out = run(&["mutate", f.path().to_str().unwrap(), "--per", "4", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 8);
    let e = Engine::default();
    for p in pairs {
        assert!(parse(p["invalid"].as_str().unwrap(), e.alphabet()).is_err());
    }
}

#[test]
fn repair_matches_library() {
    let out = run(&[
        "repair",
        "--regex",
        "([AEIOUaeiou].*[0-9].*){7,}",
        "--examples",
        &path("vowel_digits_examples.json"),
        "--target",
        "[AEIOUaeiou].*[0-9]{7,}.*",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = json(&out);
    assert_eq!(v["outcome"]["status"], "repaired");
    assert_eq!(v["success_vs_target"], true);

    let e = Engine::default();
    let ex: ExampleSet = serde_json::from_str(&std::fs::read_to_string(fixture("vowel_digits_examples.json")).unwrap()).unwrap();
    let mut api = syncorr(
        &e,
        &parse("([AEIOUaeiou].*[0-9].*){7,}", e.alphabet()).unwrap(),
        &ex,
        &RepairConfig::default(),
    );
    api.classify(&e, &parse("[AEIOUaeiou].*[0-9]{7,}.*", e.alphabet()).unwrap(), &ex).unwrap();
    let mut api = serde_json::to_value(api).unwrap();
    strip_timing(&mut v);
    strip_timing(&mut api);
    assert_eq!(v, api);
}

#[test]
fn repair_unrepaired_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"max_iterations": 1, "l_max_range": [0]}"#).unwrap();
    let ex = dir.path().join("ex.json");
    std::fs::write(&ex, r#"{"positive": ["aaa", "aaaa"], "negative": ["b", "ab", "aab", "a", "aa"]}"#).unwrap();
    let out = run(&[
        "repair",
        "--regex",
        "b",
        "--examples",
        ex.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["outcome"]["status"], "unrepaired");
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&cfg, r#"{"l_max_range": [5]}"#).unwrap();
    let bad = run(&["repair", "--regex", "b", "--examples", ex.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn repair_with_tools() {
    let ex = path("vowel_digits_examples.json");
    let synth = "cat >/dev/null; echo '([AEIOUaeiou].*[0-9].*){7,}'";
    let out = run(&["repair", "--description", "vowel then 7 digits", "--examples", &ex, "--synthesizer", synth]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["source"], "syncorr");

    let none = run(&["repair", "--description", "vowel then 7 digits", "--examples", &ex]);
    assert_eq!(none.status.code(), Some(2));
}

#[test]
fn bench_matches_library() {
    let out = run(&["bench", &path("curated.jsonl"), "--seed", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = json(&out);
    assert_eq!(v["summary"]["successes"], 3);

    let e = Engine::default();
    let load = load_benchmark(&e, &fixture("curated.jsonl")).unwrap();
    let opts = HarnessOptions { seed: 6, ..Default::default() };
    let mut api = serde_json::to_value(run_harness(&e, &load.records, &RepairConfig::default(), None, None, &opts)).unwrap();
    strip_timing(&mut v);
    strip_timing(&mut api);
    assert_eq!(v, api);

    let table = run(&["bench", &path("golden5.jsonl"), "--seed", "6", "--table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.starts_with("id"));
    assert!(text.contains("success 2/5"));
}

#[test]
fn thread_env_is_validated() {
    let out = bin().env("REGEXMEND_THREADS", "zero").args(["check", "a"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().env("REGEXMEND_THREADS", "2").args(["check", "a"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn custom_alphabet() {
    let out = run(&["--alphabet", "ab", "equiv", ".*", "(a|b)*"]);
    assert_eq!(json(&out), serde_json::json!({"equivalent": true}));
    assert_eq!(run(&["--alphabet", "ab", "check", "c"]).stdout, b"invalid\n");
}
