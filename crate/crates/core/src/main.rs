use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use moduli_calc::divisor_algebra::{pair, CurveClass, DivisorClass};
use moduli_calc::dual_graph::{lies_in_boundary, DualGraph, Stratum};
use moduli_calc::rational::to_wire;
use moduli_calc::repro::{builtin, load_scenario, run_all};
use moduli_calc::surface_lattice::{check_onenode_splittings, enumerate_lines, Lattice, LatticeClass};
use moduli_calc::{Error, Result};

#[derive(Parser)]
#[command(name = "moduli-calc", version, about = "Exact intersection numbers on moduli of pointed curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run reproduction scenarios and compare against their expected values.
    Repro {
        /// Run the whole built-in registry (the default).
        #[arg(long, conflicts_with = "scenario")]
        all: bool,
        /// A built-in scenario id or a path to a scenario JSON file.
        #[arg(long)]
        scenario: Option<String>,
        /// Print the formula expansion and source for every item.
        #[arg(long)]
        explain: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Surface lattice computations.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Dual graph computations.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Pair a curve class with a divisor class.
    Intersect {
        /// Curve class JSON, inline or a file path.
        #[arg(long)]
        curve: String,
        /// Divisor class JSON, inline or a file path.
        #[arg(long)]
        divisor: String,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List the (-1)-curves on the blow-up of P2 at r points.
    Lines {
        #[arg(long)]
        r: usize,
    },
    /// Check whether a class on the cubic surface can split with one node.
    Exclude {
        /// Lattice class JSON, inline or a file path.
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Decide whether a dual graph lies in a boundary stratum.
    Check {
        /// Dual graph JSON, inline or a file path.
        #[arg(long)]
        graph: String,
        /// `irr`, `<i>`, or `<i>:<markings>` such as `0:1,2`.
        #[arg(long)]
        stratum: String,
    },
}

/// Inline JSON when it looks like an object, otherwise a file path.
fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(Path::new(arg))?
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Repro {
            all: _,
            scenario,
            explain,
            json,
        } => {
            let scenarios = match scenario {
                Some(s) => vec![load_scenario(&s)?],
                None => builtin(),
            };
            let summary = run_all(&scenarios)?;
            print!("{}", summary.to_text(explain));
            if let Some(path) = json {
                std::fs::write(path, summary.to_json())?;
            }
            Ok(summary.exit_code() as u8)
        }
        Cmd::Lattice {
            cmd: LatticeCmd::Lines { r },
        } => {
            let lines = enumerate_lines(Lattice::BlowupOfPlane(r))?;
            print_json(&serde_json::json!({ "r": r, "count": lines.len(), "lines": lines }));
            Ok(0)
        }
        Cmd::Lattice {
            cmd: LatticeCmd::Exclude { class },
        } => {
            let c: LatticeClass = read_json(&class)?;
            let rep = check_onenode_splittings(&c)?;
            print_json(&rep);
            Ok(0)
        }
        Cmd::Graph {
            cmd: GraphCmd::Check { graph, stratum },
        } => {
            let g: DualGraph = read_json(&graph)?;
            let st = Stratum::parse(&stratum)?;
            let inside = lies_in_boundary(&g, st)?;
            print_json(&serde_json::json!({
                "genus": g.arithmetic_genus()?,
                "stable": g.is_stable(),
                "stratum": stratum,
                "lies_in": inside,
            }));
            Ok(0)
        }
        Cmd::Intersect { curve, divisor } => {
            let c: CurveClass = read_json(&curve)?;
            let d: DivisorClass = read_json(&divisor)?;
            let v = pair(&c, &d)?;
            print_json(&serde_json::json!({ "value": to_wire(&v) }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
