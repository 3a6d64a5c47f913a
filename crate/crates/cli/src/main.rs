// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `mcxdepth`: build, check, route and benchmark MCX decompositions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcxdepth_core::experiment::emit_gains;
use mcxdepth_core::transpile::lower_for_export;
use mcxdepth_core::{
    check_mcx, depth_gain, emit_table, realize, run_experiment, to_qasm, AncillaMode, Circuit, Error,
    ExperimentConfig, McxMethod, McxSpec, TableFormat, TopologySpec, TranspileOptions,
};

#[derive(Parser)]
#[command(
    name = "mcxdepth",
    version,
    about = "Depth of multi-controlled X decompositions on device topologies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a decomposition and print it.
    Decompose(McxArgs),
    /// Simulate a decomposition against the ideal MCX.
    Verify(VerifyArgs),
    /// Route a decomposition onto a topology and report its depth.
    Transpile(TranspileArgs),
    /// Run the depth table over topologies, methods and control counts.
    Bench(BenchArgs),
    /// Describe a topology.
    Topo(TopoArgs),
    /// Write a decomposition, optionally routed, as OpenQASM 2.0.
    ExportQasm(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
    Qasm,
}

#[derive(Args)]
struct Output {
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McxArgs {
    #[arg(long, value_parser = parse_method)]
    method: McxMethod,
    #[arg(long)]
    controls: usize,
    #[arg(long, visible_alias = "emit", value_enum, default_value = "md")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ancillas {
    Clean,
    Dirty,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_method)]
    method: McxMethod,
    #[arg(long)]
    controls: usize,
    /// Ancilla inputs to test with. Defaults to what the method promises.
    #[arg(long, value_enum)]
    ancillas: Option<Ancillas>,
    #[arg(long, visible_alias = "emit", value_enum, default_value = "md")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TranspileArgs {
    #[arg(long, value_parser = parse_method)]
    method: McxMethod,
    #[arg(long)]
    controls: usize,
    #[arg(long, value_parser = parse_topology, default_value = "full")]
    topology: TopologySpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the final gate-cancellation pass.
    #[arg(long)]
    no_peephole: bool,
    #[arg(long, visible_alias = "emit", value_enum, default_value = "md")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON experiment config. Without one the full default grid runs.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Also print per-step depth gains (markdown only).
    #[arg(long)]
    gains: bool,
    #[arg(long, visible_alias = "emit", value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TopoArgs {
    #[arg(long, value_parser = parse_topology)]
    topology: TopologySpec,
    /// Size for `full` without an explicit qubit count.
    #[arg(long, default_value_t = 2)]
    qubits: usize,
    #[arg(long, visible_alias = "emit", value_enum, default_value = "md")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, value_parser = parse_method)]
    method: McxMethod,
    #[arg(long)]
    controls: usize,
    /// Route onto this topology first.
    #[arg(long, value_parser = parse_topology)]
    topology: Option<TopologySpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn parse_method(s: &str) -> Result<McxMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_topology(s: &str) -> Result<TopologySpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure after argument parsing. `Usage` maps to exit code 2.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Verify(a) => verify(a),
        Command::Transpile(a) => transpile(a),
        Command::Bench(a) => bench(a),
        Command::Topo(a) => topo(a),
        Command::ExportQasm(a) => export_qasm(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_out(output: &Output, text: &str) -> Outcome {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn unsupported(command: &str, format: Format) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Failure::Usage(format!("{command} does not support --format {name}"))
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Domain(e.to_string()))
}

fn circuit_summary(c: &Circuit) -> String {
    let ops: Vec<String> = c.count_ops().iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!(
        "| qubits | ancillas | gates | depth | two-qubit depth |\n|---:|---:|---:|---:|---:|\n| {} | {} | {} | {} | {} |\n\nops: {}\n",
        c.num_qubits(),
        c.ancilla_count(),
        c.len(),
        c.depth(),
        c.two_qubit_depth(),
        ops.join(", ")
    )
}

fn decompose(a: McxArgs) -> Outcome {
    let circuit = realize(&McxSpec::new(a.method, a.controls)?)?;
    let text = match a.format {
        Format::Qasm => to_qasm(&lower_for_export(&circuit)?)?,
        Format::Json => json(&circuit)?,
        Format::Md => {
            let mut s = circuit_summary(&circuit);
            s.push('\n');
            for g in circuit.gates() {
                s.push_str(&format!("{g}\n"));
            }
            s
        }
        f => return Err(unsupported("decompose", f)),
    };
    write_out(&a.output, &text)
}

fn verify(a: VerifyArgs) -> Outcome {
    let circuit = realize(&McxSpec::new(a.method, a.controls)?)?;
    let mode = match a.ancillas {
        Some(Ancillas::Clean) => AncillaMode::Clean,
        Some(Ancillas::Dirty) => AncillaMode::Dirty,
        None if a.method.tolerates_dirty_ancillas() => AncillaMode::Dirty,
        None => AncillaMode::Clean,
    };
    let report = check_mcx(&circuit, a.controls, mode)?;
    let text = match a.format {
        Format::Json => json(&report)?,
        Format::Md => format!(
            "method: {}\ncontrols: {}\nancillas: {} ({:?})\nfidelity: {:.12}\nancilla restored: {}\nancilla fidelity: {:.12}\ntruth-table cases: {}\nrandom states: {}\nresult: {}\n",
            a.method,
            a.controls,
            circuit.ancilla_count(),
            mode,
            report.fidelity,
            report.ancilla_restored,
            report.ancilla_fidelity,
            report.truth_table_cases,
            report.random_states,
            if report.passed() { "pass" } else { "FAIL" },
        ) + &report
            .worst_basis_case
            .as_ref()
            .map(|w| format!("worst case: {w}\n"))
            .unwrap_or_default(),
        f => return Err(unsupported("verify", f)),
    };
    write_out(&a.output, &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Domain("decomposition does not implement the MCX".into()))
    }
}

fn transpile(a: TranspileArgs) -> Outcome {
    let spec = McxSpec::new(a.method, a.controls)?;
    let graph = a.topology.build(spec.total_qubits())?;
    let options = TranspileOptions {
        peephole: !a.no_peephole,
        ..TranspileOptions::with_seed(a.seed)
    };
    let r = mcxdepth_core::transpile_spec(&spec, &graph, &options)?;
    let text = match a.format {
        Format::Qasm => to_qasm(&r.circuit)?,
        Format::Json => json(&serde_json::json!({
            "method": a.method,
            "controls": a.controls,
            "topology": a.topology.label(),
            "ancillas": spec.ancillas(),
            "depth": r.depth,
            "two_qubit_depth": r.two_qubit_depth,
            "swaps": r.swap_count,
            "seed": a.seed,
            "initial_layout": r.initial_layout.logical_to_physical(),
            "final_layout": r.final_layout.logical_to_physical(),
        }))?,
        Format::Md => format!(
            "| topology | method | controls | ancillas | depth | two-qubit depth | swaps |\n|---|---|---:|---:|---:|---:|---:|\n| {} | {} | {} | {} | {} | {} | {} |\n",
            a.topology.label(),
            a.method,
            a.controls,
            spec.ancillas(),
            r.depth,
            r.two_qubit_depth,
            r.swap_count
        ),
        f => return Err(unsupported("transpile", f)),
    };
    write_out(&a.output, &text)
}

fn bench(a: BenchArgs) -> Outcome {
    let mut config = match &a.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    let format = match a.format {
        None => config.format,
        Some(Format::Md) => TableFormat::Markdown,
        Some(Format::Csv) => TableFormat::Csv,
        Some(Format::Json) => TableFormat::Json,
        Some(f) => return Err(unsupported("bench", f)),
    };
    let table = run_experiment(&config)?;
    let mut text = emit_table(&table, format)?;
    if a.gains {
        if format != TableFormat::Markdown {
            return Err(Failure::Usage("--gains needs --format md".into()));
        }
        text.push_str("\n## Depth gain per added control\n\n");
        text.push_str(&emit_gains(&depth_gain(&table)));
    }
    write_out(&a.output, &text)
}

fn topo(a: TopoArgs) -> Outcome {
    let g = a.topology.build(a.qubits)?;
    let text = match a.format {
        Format::Json => json(&g.to_map())?,
        Format::Md => format!(
            "| name | qubits | edges | max degree | diameter |\n|---|---:|---:|---:|---:|\n| {} | {} | {} | {} | {} |\n",
            g.name(),
            g.num_qubits(),
            g.edges().len(),
            g.max_degree(),
            g.diameter()
        ),
        f => return Err(unsupported("topo", f)),
    };
    write_out(&a.output, &text)
}

fn export_qasm(a: ExportArgs) -> Outcome {
    let spec = McxSpec::new(a.method, a.controls)?;
    let text = match &a.topology {
        Some(t) => {
            let graph = t.build(spec.total_qubits())?;
            let r = mcxdepth_core::transpile_spec(&spec, &graph, &TranspileOptions::with_seed(a.seed))?;
            to_qasm(&r.circuit)?
        }
        None => to_qasm(&lower_for_export(&realize(&spec)?)?)?,
    };
    write_out(&a.output, &text)
}
