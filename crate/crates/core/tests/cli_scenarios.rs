use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use hecke_duality::cli::{find_check, list_checks, run_scenario, CliError, RunOptions, Scenario, Status, Suite};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn bundled() -> Vec<(String, Scenario)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(scenario_dir()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "toml")).collect();
    files.sort();
    files.into_iter().map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), Scenario::from_file(&p).unwrap())).collect()
}

fn load(name: &str) -> Scenario {
    Scenario::from_file(&scenario_dir().join(format!("{name}.toml"))).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("verify-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

const MINIMAL_MODEL: &str = "name = \"m\"\nkind = \"crossed-model\"\nsuites = []\n\n[model]\np = 3\nd = 1\n\n[model.C]\norder = 2\n\n[model.C.action]\n0 = [[1]]\n1 = [[-1]]\n";

#[test]
fn every_bundled_scenario_passes() {
    let all = bundled();
    assert!(all.len() >= 8);
    for (name, s) in &all {
        assert_eq!(&s.name, name);
        let r = run_scenario(s, &RunOptions::default()).unwrap();
        assert!(!r.checks.is_empty(), "{name}");
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{name}: {} {:?} {:?}", c.id, c.witness, c.reason);
        }
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn named_scenarios_cover_their_suites() {
    let r = run_scenario(&load("s3-degree0"), &RunOptions::default()).unwrap();
    let suites: BTreeSet<Suite> = r.checks.iter().map(|c| c.suite).collect();
    assert_eq!(suites, BTreeSet::from([Suite::Degree0, Suite::Hecke]));
    assert_eq!(r.checks.len(), 18);
    assert!(r.all_passed());
    let r = run_scenario(&load("model-p3-d1-c2"), &RunOptions::default()).unwrap();
    assert_eq!(r.checks.len(), 27);
    assert!(r.all_passed());
    assert_eq!(r.normalizations.get("field").map(String::as_str), Some("F_3"));
    assert!(r.normalizations.contains_key("model.anti_involution"));
}

#[test]
fn every_requested_check_appears_once() {
    let mut s = load("model-p3-d1-c2");
    s.suites = vec!["algebra".into(), "algebra".into()];
    s.checks = vec!["e-associative".into(), "maindual".into(), "maindual".into()];
    let r = run_scenario(&s, &RunOptions::default()).unwrap();
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["e-associative", "chi-determinant", "j-anti-involution", "jchi-anti-involution", "degree0-hecke", "maindual"]);
}

#[test]
fn empty_suite_list_gives_zero_checks() {
    let s = Scenario::parse(MINIMAL_MODEL).unwrap();
    let r = run_scenario(&s, &RunOptions::default()).unwrap();
    assert!(r.checks.is_empty());
    assert_eq!(r.exit_code(), 0);
    assert!(r.to_json().contains("\"checks\": []"));
}

#[test]
fn catalog_is_duplicate_free_and_anchored() {
    let ids: BTreeSet<&str> = list_checks().iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), list_checks().len());
    assert!(list_checks().iter().all(|c| !c.anchor.is_empty() && !c.summary.is_empty()));
    let jj = list_checks().iter().find(|c| c.anchor == "prop:J'-J").unwrap();
    assert_eq!(jj.suite, Suite::Degree0);
    assert_eq!(find_check(jj.id).unwrap().anchor, "prop:J'-J");
    for suite in Suite::ALL {
        assert_eq!(Suite::parse(suite.name()), Some(suite));
        assert!(list_checks().iter().any(|c| c.suite == suite));
    }
}

#[test]
fn manifest_cross_references_resolve() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let manifest = std::fs::read_to_string(root.join("tests/data/check_manifest.txt")).unwrap();
    let mut covered = BTreeSet::new();
    for (n, line) in manifest.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#')) {
        let (label, target) = line.split_once('|').unwrap_or_else(|| panic!("line {}: no `|`", n + 1));
        assert!(!label.trim().is_empty(), "line {}", n + 1);
        match target.trim().split_once(' ') {
            Some(("check", id)) => {
                assert!(find_check(id).is_some(), "line {}: unknown check {id}", n + 1);
                covered.insert(id.to_string());
            }
            Some(("test", path)) => {
                let (file, func) = path.split_once("::").unwrap();
                let src = std::fs::read_to_string(root.join("tests").join(format!("{file}.rs"))).unwrap();
                assert!(src.contains(&format!("fn {func}(")), "line {}: no test {path}", n + 1);
            }
            _ => panic!("line {}: bad target {target}", n + 1),
        }
    }
    for c in list_checks() {
        assert!(covered.contains(c.id), "{} is not in the manifest", c.id);
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, s) in bundled() {
        let one = run_scenario(&s, &RunOptions::default()).unwrap().to_json();
        let two = run_scenario(&s, &RunOptions { jobs: 1, ..RunOptions::default() }).unwrap().to_json();
        assert_eq!(one, two, "{name}");
    }
}

#[test]
fn a_failing_check_does_not_stop_the_run() {
    let mut s = load("model-p3-d1-c2");
    s.suites.clear();
    s.checks = vec!["emss-ext2".into(), "e-associative".into(), "gram-invertible".into()];
    let r = run_scenario(&s, &RunOptions { window: Some((0, 0)), ..RunOptions::default() }).unwrap();
    let status: Vec<Status> = r.checks.iter().map(|c| c.status).collect();
    assert_eq!(status, [Status::Fail, Status::Pass, Status::Pass]);
    let w = r.checks[0].witness.as_ref().unwrap();
    assert!(!w.at.is_empty() && w.lhs != w.rhs);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.scenario.window, Some([0, 0]));
}

#[test]
fn overrides_are_echoed() {
    let s = load("engine-lambda");
    let r = run_scenario(&s, &RunOptions { seed: Some(99), window: Some((1, 3)), ..RunOptions::default() }).unwrap();
    assert_eq!(r.scenario.seed, 99);
    assert_eq!(r.scenario.window, Some([1, 3]));
    assert!(r.all_passed());
    assert!(r.checks.iter().all(|c| c.millis == 0));
}

fn config_error(text: &str) -> (Option<usize>, String) {
    match Scenario::parse(text) {
        Err(CliError::Config { line, key, .. }) => (line, key),
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn config_errors_carry_line_and_key() {
    let (line, key) = config_error(&MINIMAL_MODEL.replace("d = 1", "d = \"one\""));
    assert_eq!((line, key.as_str()), (Some(7), "d"));
    let (line, key) = config_error(&MINIMAL_MODEL.replace("suites = []", "suites = [\"nonsense\"]"));
    assert_eq!((line, key.as_str()), (Some(3), "suites[0]"));
    let (line, key) = config_error(&MINIMAL_MODEL.replace("1 = [[-1]]", "1 = [[-1, 0]]"));
    assert_eq!((line, key.as_str()), (Some(14), "model.C.action.1"));
    let (line, key) = config_error(&MINIMAL_MODEL.replace("suites = []", "suites = [\"degree0\"]"));
    assert_eq!((line, key.as_str()), (Some(3), "suites[0]"));
    let (line, key) = config_error(&MINIMAL_MODEL.replace("p = 3", "p = 4"));
    assert_eq!((line, key.as_str()), (Some(6), "model.p"));
    let (_, key) = config_error(&MINIMAL_MODEL.replace("order = 2", "order = 2\ncolour = 1"));
    assert!(key.contains("colour"), "{key}");
    let (_, key) = config_error("name = \"x\"\nkind = \"finite-group\"\n");
    assert_eq!(key, "group");
    let (_, key) = config_error("name = \"x\"\nkind = \"dg-engine\"\nwindow = [3, 1]\n");
    assert_eq!(key, "window");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_verify");
    let pass = Command::new(bin).arg(scenario_dir().join("engine-lambda.toml")).output().unwrap();
    assert_eq!(pass.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&pass.stdout).unwrap();
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "normalizations", "scenario", "version"]);

    let out = std::env::temp_dir().join(format!("verify-{}-report.json", std::process::id()));
    let fail = Command::new(bin)
        .arg(temp_file("fail.toml", &MINIMAL_MODEL.replace("suites = []", "checks = [\"emss-ext2\"]")))
        .args(["--window", "0:0", "--report"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"status\": \"fail\""));

    let bad = Command::new(bin).arg(temp_file("bad.toml", "name = 1\n")).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1"));

    let listed = Command::new(bin).arg("--list-checks").output().unwrap();
    assert_eq!(listed.status.code(), Some(0));
    let text = String::from_utf8_lossy(&listed.stdout);
    assert!(list_checks().iter().all(|c| text.contains(c.id)));
}
