use std::fs;
use std::path::Path;

use moduli_calc::repro::{builtin, run_all, run_scenario, Scenario};
use moduli_calc::Error;

fn scenario_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios"))
}

#[test]
fn shipped_files_match_the_builtin_registry() {
    let mut on_disk: Vec<Scenario> = fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| Scenario::from_json(&fs::read_to_string(e.unwrap().path()).unwrap()).unwrap())
        .collect();
    on_disk.sort_by(|a, b| a.id.cmp(&b.id));
    assert_eq!(on_disk, builtin());
    assert_eq!(on_disk.len(), 10);
}

#[test]
fn every_expected_value_is_cited() {
    for entry in fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        let raw: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let expected = raw["expected"].as_array().unwrap();
        assert!(!expected.is_empty(), "{}", path.display());
        for e in expected {
            let c = e.get("citation").and_then(|c| c.as_str()).unwrap_or("");
            assert!(!c.trim().is_empty(), "uncited expectation in {}: {e}", path.display());
        }
    }
}

#[test]
fn full_registry_passes() {
    let summary = run_all(&builtin()).unwrap();
    assert_eq!(summary.scenarios, 10);
    assert_eq!(summary.failed, 0, "{}", summary.to_text(false));
    assert_eq!(summary.exit_code(), 0);
    let ids: Vec<&str> = summary.reports.iter().map(|r| r.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let mut reversed = builtin();
    reversed.reverse();
    let a = run_all(&builtin()).unwrap();
    let b = run_all(&reversed).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_text(true), b.to_text(true));
}

#[test]
fn empty_registry_passes_trivially() {
    let summary = run_all(&[]).unwrap();
    assert_eq!(summary.scenarios, 0);
    assert_eq!(summary.exit_code(), 0);
}

#[test]
fn falsified_value_fails() {
    let mut s = builtin().into_iter().find(|s| s.id == "g13_4").unwrap();
    let item = s.expected.iter_mut().find(|e| e.key == "lift_K").unwrap();
    item.value = serde_json::json!("-20");
    let r = run_scenario(&s).unwrap();
    assert!(!r.pass);
    let bad: Vec<&str> = r.items.iter().filter(|i| !i.pass).map(|i| i.key.as_str()).collect();
    assert_eq!(bad, ["lift_K"]);
    assert_eq!(run_all(&[s]).unwrap().exit_code(), 1);
}

#[test]
fn comparison_is_exact() {
    let mut s = builtin().into_iter().find(|s| s.id == "g14_3").unwrap();
    let item = s.expected.iter_mut().find(|e| e.key == "theta_K").unwrap();
    item.value = serde_json::json!("-176/2");
    assert!(run_scenario(&s).unwrap().pass);
    let item = s.expected.iter_mut().find(|e| e.key == "theta_K").unwrap();
    item.value = serde_json::json!("-880001/10000");
    assert!(!run_scenario(&s).unwrap().pass);
}

#[test]
fn malformed_scenarios_are_rejected() {
    let uncited = r#"{"id":"x","provenance":"p","task":{"type":"lines","r":6},
        "expected":[{"key":"count","value":"27","citation":""}]}"#;
    assert!(matches!(Scenario::from_json(uncited), Err(Error::MalformedScenario(_))));

    let unknown_field = r#"{"id":"x","provenance":"p","task":{"type":"lines","r":6},
        "expected":[{"key":"count","value":"27","citation":"c"}],"extra":1}"#;
    assert!(matches!(Scenario::from_json(unknown_field), Err(Error::MalformedScenario(_))));

    let unknown_key = r#"{"id":"x","provenance":"p","task":{"type":"lines","r":6},
        "expected":[{"key":"nope","value":"27","citation":"c"}]}"#;
    let s = Scenario::from_json(unknown_key).unwrap();
    assert!(matches!(run_scenario(&s), Err(Error::MalformedScenario(_))));
}
