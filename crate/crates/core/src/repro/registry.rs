//! Built-in scenarios, compiled in from `scenarios/*.json`.

use std::path::Path;

use super::scenario::Scenario;
use crate::error::{Error, Result};

const BUILTIN: &[(&str, &str)] = &[
    ("cubic_exclusion", include_str!("../../scenarios/cubic_exclusion.json")),
    ("cubic_lines", include_str!("../../scenarios/cubic_lines.json")),
    (
        "dualgraph_delta_avoidance",
        include_str!("../../scenarios/dualgraph_delta_avoidance.json"),
    ),
    ("g12_7", include_str!("../../scenarios/g12_7.json")),
    ("g12_8", include_str!("../../scenarios/g12_8.json")),
    ("g13_4", include_str!("../../scenarios/g13_4.json")),
    ("g14_3", include_str!("../../scenarios/g14_3.json")),
    ("g15_gamma", include_str!("../../scenarios/g15_gamma.json")),
    ("g16", include_str!("../../scenarios/g16.json")),
    (
        "hyperelliptic_adjunction",
        include_str!("../../scenarios/hyperelliptic_adjunction.json"),
    ),
];

/// The built-in registry, sorted by id.
pub fn builtin() -> Vec<Scenario> {
    BUILTIN
        .iter()
        .map(|(id, text)| {
            let s = Scenario::from_json(text).unwrap_or_else(|e| panic!("built-in scenario {id}: {e}"));
            assert_eq!(&s.id, id, "built-in scenario id");
            s
        })
        .collect()
}

pub fn builtin_by_id(id: &str) -> Option<Scenario> {
    builtin().into_iter().find(|s| s.id == id)
}

/// A built-in id, or a path to a scenario JSON file.
pub fn load_scenario(id_or_path: &str) -> Result<Scenario> {
    if let Some(s) = builtin_by_id(id_or_path) {
        return Ok(s);
    }
    let path = Path::new(id_or_path);
    if !path.exists() {
        return Err(Error::InvalidInput(format!(
            "{id_or_path:?} is neither a built-in scenario nor a file"
        )));
    }
    Scenario::from_json(&std::fs::read_to_string(path)?)
}
