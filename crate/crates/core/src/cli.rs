//! The `amecirc` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::analysis::{greedy_majorizing_search, majorization_analysis, mermin_m5, minimal_support, verify_ame, MerminSettings, Parties};
use crate::catalog::{reference_state, resolve_circuit, resolve_state, state_to_json};
use crate::circuit::{simulate, simulate_with_snapshots};
use crate::error::{Error, Result};
use crate::graphstates::{graph_to_circuit, known_graph, Graph};
use crate::linalg::StateVector;
use crate::quditcompile::{compile, CompileOptions};

#[derive(Debug, Parser)]
#[command(name = "amecirc", version, about = "Build, simulate and verify circuits for AME states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph-state circuit from a named graph or a graph JSON file.
    Build {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        d: usize,
        /// Lower the qudit circuit onto qubits.
        #[arg(long)]
        compile_qubits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a circuit from |0…0⟩ and dump the final state.
    Simulate {
        circuit: String,
        /// Dump the state after every entangling gate instead.
        #[arg(long)]
        snapshots: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// AME and minimal-support verdict for a circuit output or a catalog state.
    Verify {
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        circuit: Option<String>,
        #[arg(long)]
        state: Option<String>,
        /// Site groups, e.g. "0 1,2 3,4 5,6 7".
        #[arg(long)]
        parties: Option<String>,
    },
    /// Per-step bipartition spectra as CSV.
    Majorization {
        #[arg(long)]
        circuit: String,
        #[arg(long)]
        parties: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Five-qubit Mermin value of a state.
    Mermin {
        #[arg(long)]
        state: String,
        #[arg(long, default_value = "xy")]
        settings: String,
    },
    /// Greedy majorization-guided circuit search on a connectivity graph.
    Search {
        #[arg(long)]
        connectivity: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_gates: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a catalog state.
    Catalog {
        #[arg(long)]
        state: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status for an error: 2 for numeric failures, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{}", text.lines().next().unwrap_or("")) };
            if code == 1 {
                let _ = writeln!(stderr);
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => writeln!(stdout, "{}", text.trim_end())?,
    }
    Ok(())
}

fn resolve_graph(spec: &str) -> Result<Graph> {
    match known_graph(spec) {
        Ok(g) => Ok(g),
        Err(_) if Path::new(spec).exists() => Graph::load(Path::new(spec)),
        Err(e) => Err(e),
    }
}

fn parties_for(state: &StateVector, spec: Option<&str>) -> Result<Option<Parties>> {
    spec.map(|p| Parties::parse(p, state.dims())).transpose()
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Build { graph, d, compile_qubits, out } => {
            let mut c = graph_to_circuit(&resolve_graph(&graph)?, d)?;
            if compile_qubits {
                c = compile(&c, &CompileOptions::default())?;
            }
            emit(&c.to_json()?, out.as_deref(), stdout)
        }
        Command::Simulate { circuit, snapshots, out } => {
            let c = resolve_circuit(&circuit)?;
            let text = if snapshots {
                let snaps = simulate_with_snapshots(&c, None)?
                    .into_iter()
                    .map(|s| {
                        let amps: serde_json::Value = serde_json::from_str(&state_to_json(&s.state)?)?;
                        Ok(json!({ "step": s.step, "amplitudes": amps }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                serde_json::to_string_pretty(&snaps)?
            } else {
                state_to_json(&simulate(&c, None)?)?
            };
            emit(&text, out.as_deref(), stdout)
        }
        Command::Verify { circuit, state, parties } => {
            let psi = match (circuit, state) {
                (Some(c), _) => simulate(&resolve_circuit(&c)?, None)?,
                (None, Some(s)) => reference_state(&s)?,
                (None, None) => return Err(Error::input("verify needs --circuit or --state")),
            };
            let parties = parties_for(&psi, parties.as_deref())?;
            let verdict = verify_ame(&psi, parties.as_ref())?;
            let minimal = minimal_support(&psi, parties.as_ref())?;
            let body = json!({ "ame": verdict.is_ame, "max_dev": verdict.max_deviation, "minimal_support": minimal });
            emit(&serde_json::to_string(&body)?, None, stdout)
        }
        Command::Majorization { circuit, parties, out } => {
            let c = resolve_circuit(&circuit)?;
            let parties = parties.map(|p| Parties::parse(&p, c.dims())).transpose()?;
            let report = majorization_analysis(&c, parties.as_ref(), &circuit)?;
            emit(&report.to_csv(), out.as_deref(), stdout)?;
            if out.is_some() {
                writeln!(stdout, "{}", report.summary_json())?;
            }
            Ok(())
        }
        Command::Mermin { state, settings } => {
            if settings != "xy" {
                return Err(Error::input(format!("unknown settings '{settings}' (supported: xy)")));
            }
            let value = mermin_m5(&resolve_state(&state)?, &MerminSettings::xy())?;
            writeln!(stdout, "{value:.6}")?;
            Ok(())
        }
        Command::Search { connectivity, d, max_gates, out } => {
            let found = greedy_majorizing_search(&resolve_graph(&connectivity)?, d, max_gates)?;
            emit(&found.circuit.to_json()?, out.as_deref(), stdout)
        }
        Command::Catalog { state, out } => emit(&state_to_json(&reference_state(&state)?)?, out.as_deref(), stdout),
    }
}
