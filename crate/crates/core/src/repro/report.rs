//! Per-scenario reports, the run summary, and their JSON / text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::scenario::{evaluate, Scenario, Value};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub key: String,
    pub expected: serde_json::Value,
    pub actual: serde_json::Value,
    pub pass: bool,
    pub citation: String,
    pub explain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub id: String,
    pub provenance: String,
    pub pass: bool,
    pub items: Vec<ItemResult>,
    /// Every computed output, including the ones no expectation mentions.
    pub outputs: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub scenarios: usize,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<Report>,
}

impl Summary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// 0 when every scenario passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.all_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self, explain: bool) -> String {
        let mut s = String::new();
        let w_id = self.reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let w_key = self
            .reports
            .iter()
            .flat_map(|r| r.items.iter().map(|i| i.key.len()))
            .max()
            .unwrap_or(3)
            .max(3);
        let _ = writeln!(s, "{:<w_id$}  {:<w_key$}  {:>14}  {:>14}  result", "id", "key", "expected", "actual");
        for r in &self.reports {
            for i in &r.items {
                let _ = writeln!(
                    s,
                    "{:<w_id$}  {:<w_key$}  {:>14}  {:>14}  {}",
                    r.id,
                    i.key,
                    plain(&i.expected),
                    plain(&i.actual),
                    if i.pass { "PASS" } else { "FAIL" }
                );
                if explain {
                    let _ = writeln!(s, "    = {}", i.explain);
                    let _ = writeln!(s, "    source: {}", i.citation);
                }
            }
            if let Some(d) = r.outputs.get("consistency_delta") {
                let _ = writeln!(s, "{:<w_id$}  diagnostic consistency_delta = {}", r.id, plain(d));
            }
            if let Some(d) = r.outputs.get("unstable_instances") {
                let _ = writeln!(s, "{:<w_id$}  diagnostic unstable_instances = {}", r.id, plain(d));
            }
        }
        let _ = writeln!(
            s,
            "{} scenarios, {} passed, {} failed",
            self.scenarios, self.passed, self.failed
        );
        s
    }
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Evaluates one scenario and compares every expected item exactly.
pub fn run_scenario(s: &Scenario) -> Result<Report> {
    s.check()?;
    let outputs = evaluate(&s.task)?;
    let mut items = Vec::with_capacity(s.expected.len());
    for e in &s.expected {
        let expected = Value::from_expected(&e.value)?;
        let out = outputs.get(&e.key).ok_or_else(|| {
            Error::MalformedScenario(format!("{}: task produces no output {:?}", s.id, e.key))
        })?;
        items.push(ItemResult {
            key: e.key.clone(),
            expected: expected.to_json(),
            actual: out.value.to_json(),
            pass: expected == out.value,
            citation: e.citation.clone(),
            explain: format!("{} = {}", out.explain, out.value),
        });
    }
    Ok(Report {
        id: s.id.clone(),
        provenance: s.provenance.clone(),
        pass: items.iter().all(|i| i.pass),
        items,
        outputs: outputs.0.iter().map(|(k, o)| (k.clone(), o.value.to_json())).collect(),
    })
}

/// Runs every scenario; reports come out sorted by id whatever the input order.
pub fn run_all(scenarios: &[Scenario]) -> Result<Summary> {
    let mut reports = scenarios.iter().map(run_scenario).collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(Summary {
        scenarios: reports.len(),
        passed,
        failed: reports.len() - passed,
        reports,
    })
}
