//! Scenario registry and the reproduction harness behind `moduli-calc repro`.

mod registry;
mod report;
mod scenario;

pub use registry::{builtin, builtin_by_id, load_scenario};
pub use report::{run_all, run_scenario, ItemResult, Report, Summary};
pub use scenario::{evaluate, Expectation, Output, Outputs, Scenario, Task, Value};
