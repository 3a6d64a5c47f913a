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

//! The depth experiment: method × topology × control count, with NA cells
//! wherever a device lacks the qubits a construction needs.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcx::{ancilla_requirement, McxMethod, McxSpec};
use crate::topology::{CouplingGraph, TopologySpec};
use crate::transpile::{transpile_spec, TranspileOptions, TranspiledResult};

/// Control counts covered by default.
pub const DEFAULT_CONTROLS: (usize, usize) = (3, 10);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub topologies: Vec<TopologySpec>,
    pub methods: Vec<McxMethod>,
    /// Inclusive `[min, max]`.
    pub control_range: (usize, usize),
    /// Lets `control_range` go past the default bounds.
    pub allow_large: bool,
    pub seed: u64,
    /// Seeds `seed..seed + seed_trials` are tried; the shallowest result wins.
    pub seed_trials: u64,
    pub lookahead_weight: f64,
    pub lookahead_window: usize,
    pub peephole: bool,
    pub layout_trials: usize,
    pub refine_rounds: usize,
    pub trial_budget: usize,
    pub format: TableFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let t = TranspileOptions::default();
        ExperimentConfig {
            topologies: TopologySpec::benchmark_set(),
            methods: McxMethod::ALL.to_vec(),
            control_range: DEFAULT_CONTROLS,
            allow_large: false,
            seed: 0,
            seed_trials: 1,
            lookahead_weight: t.lookahead_weight,
            lookahead_window: t.lookahead_window,
            peephole: t.peephole,
            layout_trials: t.layout_trials,
            refine_rounds: t.refine_rounds,
            trial_budget: t.trial_budget,
            format: TableFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.control_range;
        if lo == 0 || lo > hi {
            return Err(Error::Config(format!("bad control range {lo}..={hi}")));
        }
        if !self.allow_large && (lo < DEFAULT_CONTROLS.0 || hi > DEFAULT_CONTROLS.1) {
            return Err(Error::Config(format!(
                "control range {lo}..={hi} is outside {}..={}; set allow_large to extend it",
                DEFAULT_CONTROLS.0, DEFAULT_CONTROLS.1
            )));
        }
        if self.seed_trials == 0 {
            return Err(Error::Config("seed_trials must be at least 1".into()));
        }
        if self.lookahead_weight.is_nan() || self.lookahead_weight < 0.0 {
            return Err(Error::Config("lookahead_weight must be non-negative".into()));
        }
        Ok(())
    }

    fn options(&self, seed: u64) -> TranspileOptions {
        TranspileOptions {
            seed,
            lookahead_weight: self.lookahead_weight,
            lookahead_window: self.lookahead_window,
            peephole: self.peephole,
            layout_trials: self.layout_trials,
            refine_rounds: self.refine_rounds,
            trial_budget: self.trial_budget,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[serde(alias = "md")]
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Unknown {
                what: "format",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "NA")]
    NotApplicable,
}

/// One `(topology, method, controls)` result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub topology: String,
    pub method: McxMethod,
    pub controls: usize,
    pub ancillas: usize,
    pub status: CellStatus,
    pub depth: Option<usize>,
    pub two_qubit_depth: Option<usize>,
    pub swaps: Option<usize>,
    pub seed: u64,
}

impl Cell {
    pub fn is_ok(&self) -> bool {
        self.status == CellStatus::Ok
    }
}

/// Cells in topology, method, control order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DepthTable {
    pub cells: Vec<Cell>,
}

impl DepthTable {
    pub fn get(&self, topology: &str, method: McxMethod, controls: usize) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.topology == topology && c.method == method && c.controls == controls)
    }

    /// Depth of an ok cell.
    pub fn depth(&self, topology: &str, method: McxMethod, controls: usize) -> Option<usize> {
        self.get(topology, method, controls).and_then(|c| c.depth)
    }

    /// Topology labels in first-appearance order.
    pub fn topologies(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.topology) {
                out.push(c.topology.clone());
            }
        }
        out
    }

    fn methods(&self) -> Vec<McxMethod> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.method) {
                out.push(c.method);
            }
        }
        out
    }

    /// Parses the long-form CSV written by [`emit_table`]. The seed column is
    /// not part of the CSV and is filled from `seed`.
    pub fn from_csv(text: &str, seed: u64) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut cells = Vec::new();
        for row in reader.deserialize::<CsvRow>() {
            let row = row?;
            let opt = |s: &str| -> Result<Option<usize>> {
                if s == "NA" {
                    Ok(None)
                } else {
                    s.parse()
                        .map(Some)
                        .map_err(|_| Error::Config(format!("bad number {s:?} in csv")))
                }
            };
            cells.push(Cell {
                method: row.method.parse()?,
                controls: row.controls,
                ancillas: row.ancillas,
                status: match row.status.as_str() {
                    "ok" => CellStatus::Ok,
                    "NA" => CellStatus::NotApplicable,
                    s => {
                        return Err(Error::Unknown {
                            what: "status",
                            value: s.into(),
                        })
                    }
                },
                depth: opt(&row.depth)?,
                two_qubit_depth: opt(&row.two_qubit_depth)?,
                swaps: opt(&row.swaps)?,
                topology: row.topology,
                seed,
            });
        }
        Ok(DepthTable { cells })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    topology: String,
    method: String,
    controls: usize,
    ancillas: usize,
    depth: String,
    two_qubit_depth: String,
    swaps: String,
    status: String,
}

struct Job {
    topology: usize,
    method: McxMethod,
    controls: usize,
}

/// Runs every cell of the grid. Cells are independent and run in parallel;
/// the result order depends only on the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<DepthTable> {
    run_experiment_with(config, |_, _, _, _| {})
}

/// [`run_experiment`], calling `inspect` with the kept transpilation of every
/// ok cell. Calls may come from several threads in any order.
pub fn run_experiment_with<F>(config: &ExperimentConfig, inspect: F) -> Result<DepthTable>
where
    F: Fn(&Cell, &McxSpec, &CouplingGraph, &TranspiledResult) + Sync,
{
    config.validate()?;
    let capacities = config
        .topologies
        .iter()
        .map(TopologySpec::capacity)
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = config.control_range;
    let jobs: Vec<Job> = (0..config.topologies.len())
        .flat_map(|t| {
            config.methods.iter().flat_map(move |&m| {
                (lo..=hi).map(move |c| Job {
                    topology: t,
                    method: m,
                    controls: c,
                })
            })
        })
        .collect();

    let cells = jobs
        .par_iter()
        .map(|job| {
            let topo = &config.topologies[job.topology];
            let mut cell = Cell {
                topology: topo.label(),
                method: job.method,
                controls: job.controls,
                ancillas: ancilla_requirement(job.method, job.controls),
                status: CellStatus::NotApplicable,
                depth: None,
                two_qubit_depth: None,
                swaps: None,
                seed: config.seed,
            };
            let Ok(spec) = McxSpec::new(job.method, job.controls) else {
                return Ok(cell);
            };
            if capacities[job.topology].is_some_and(|cap| cap < spec.total_qubits()) {
                return Ok(cell);
            }
            let graph = topo.build(spec.total_qubits())?;
            let mut kept: Option<TranspiledResult> = None;
            for seed in config.seed..config.seed + config.seed_trials {
                let r = transpile_spec(&spec, &graph, &config.options(seed))?;
                if cell.depth.is_none_or(|d| r.depth < d) {
                    cell.status = CellStatus::Ok;
                    cell.depth = Some(r.depth);
                    cell.two_qubit_depth = Some(r.two_qubit_depth);
                    cell.swaps = Some(r.swap_count);
                    cell.seed = seed;
                    kept = Some(r);
                }
            }
            if let Some(r) = kept {
                inspect(&cell, &spec, &graph, &r);
            }
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DepthTable { cells })
}

/// Per `(topology, method)`: `gain(C) = depth(C) − depth(C − 1)` wherever both
/// cells are ok.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GainSeries {
    pub series: BTreeMap<(String, McxMethod), Vec<(usize, i64)>>,
}

impl GainSeries {
    pub fn get(&self, topology: &str, method: McxMethod) -> Option<&[(usize, i64)]> {
        self.series
            .get(&(topology.to_string(), method))
            .map(Vec::as_slice)
    }
}

pub fn depth_gain(table: &DepthTable) -> GainSeries {
    let mut series: BTreeMap<(String, McxMethod), Vec<(usize, i64)>> = BTreeMap::new();
    for cell in table.cells.iter().filter(|c| c.is_ok()) {
        let Some(prev) = table.depth(&cell.topology, cell.method, cell.controls - 1) else {
            continue;
        };
        let gain = cell.depth.expect("ok cell") as i64 - prev as i64;
        series
            .entry((cell.topology.clone(), cell.method))
            .or_default()
            .push((cell.controls, gain));
    }
    series.values_mut().for_each(|v| v.sort_unstable());
    GainSeries { series }
}

/// Record shape used for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub method: McxMethod,
    pub controls: usize,
    pub topology: String,
    pub ancillas: usize,
    pub depth: Option<usize>,
    pub two_qubit_depth: Option<usize>,
    pub swaps: Option<usize>,
    pub seed: u64,
    pub status: CellStatus,
}

impl From<&Cell> for CellRecord {
    fn from(c: &Cell) -> Self {
        CellRecord {
            method: c.method,
            controls: c.controls,
            topology: c.topology.clone(),
            ancillas: c.ancillas,
            depth: c.depth,
            two_qubit_depth: c.two_qubit_depth,
            swaps: c.swaps,
            seed: c.seed,
            status: c.status,
        }
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "topology",
    "method",
    "controls",
    "ancillas",
    "depth",
    "two_qubit_depth",
    "swaps",
    "status",
];

pub fn emit_table(table: &DepthTable, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => emit_csv(table),
        TableFormat::Json => {
            let records: Vec<CellRecord> = table.cells.iter().map(CellRecord::from).collect();
            Ok(serde_json::to_string_pretty(&records)? + "\n")
        }
        TableFormat::Markdown => Ok(emit_markdown(table)),
    }
}

fn emit_csv(table: &DepthTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let na = |v: Option<usize>| v.map_or_else(|| "NA".to_string(), |d| d.to_string());
    for c in &table.cells {
        w.write_record([
            c.topology.clone(),
            c.method.to_string(),
            c.controls.to_string(),
            c.ancillas.to_string(),
            na(c.depth),
            na(c.two_qubit_depth),
            na(c.swaps),
            if c.is_ok() { "ok" } else { "NA" }.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn emit_markdown(table: &DepthTable) -> String {
    let mut out = String::from("# MCX circuit depth (ancilla count in parentheses)\n");
    let methods = table.methods();
    for topo in table.topologies() {
        let _ = write!(out, "\n## {topo}\n\n| Controls |");
        for m in &methods {
            let _ = write!(out, " {m} |");
        }
        out.push_str("\n|---:|");
        out.push_str(&"---:|".repeat(methods.len()));
        out.push('\n');
        let mut controls: Vec<usize> = table
            .cells
            .iter()
            .filter(|c| c.topology == topo)
            .map(|c| c.controls)
            .collect();
        controls.sort_unstable();
        controls.dedup();
        for k in controls {
            let _ = write!(out, "| {k} |");
            for &m in &methods {
                let text = match table.get(&topo, m, k) {
                    Some(c) if c.is_ok() => format!("{} ({})", c.depth.unwrap_or(0), c.ancillas),
                    Some(_) => "NA (-)".to_string(),
                    None => String::new(),
                };
                let _ = write!(out, " {text} |");
            }
            out.push('\n');
        }
    }
    out
}

/// Markdown listing of depth gains.
pub fn emit_gains(gains: &GainSeries) -> String {
    let mut out = String::from("| Topology | Method | Gains (controls: gain) |\n|---|---|---|\n");
    for ((topo, method), points) in &gains.series {
        let pts: Vec<String> = points.iter().map(|(c, g)| format!("{c}: {g}")).collect();
        let _ = writeln!(out, "| {topo} | {method} | {} |", pts.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(topology: &str, method: McxMethod, controls: usize, depth: Option<usize>) -> Cell {
        Cell {
            topology: topology.into(),
            method,
            controls,
            ancillas: ancilla_requirement(method, controls),
            status: if depth.is_some() {
                CellStatus::Ok
            } else {
                CellStatus::NotApplicable
            },
            depth,
            two_qubit_depth: depth.map(|d| d / 2),
            swaps: depth.map(|_| 0),
            seed: 0,
        }
    }

    #[test]
    fn gains_are_first_differences() {
        let depths = [24, 36, 48, 60, 72, 84, 96, 108];
        let table = DepthTable {
            cells: (3..=10)
                .zip(depths)
                .map(|(c, d)| cell("full", McxMethod::VChain, c, Some(d)))
                .collect(),
        };
        let g = depth_gain(&table);
        let s = g.get("full", McxMethod::VChain).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s.iter().all(|&(_, gain)| gain == 12));

        let flat = DepthTable {
            cells: (3..=5)
                .map(|c| cell("t", McxMethod::NoAncilla, c, Some(7)))
                .collect(),
        };
        assert_eq!(
            depth_gain(&flat).get("t", McxMethod::NoAncilla).unwrap(),
            &[(4, 0), (5, 0)]
        );
    }

    #[test]
    fn gains_skip_na() {
        let table = DepthTable {
            cells: vec![
                cell("t", McxMethod::Recursion, 4, None),
                cell("t", McxMethod::Recursion, 5, Some(80)),
                cell("t", McxMethod::Recursion, 6, Some(100)),
            ],
        };
        assert_eq!(
            depth_gain(&table).get("t", McxMethod::Recursion).unwrap(),
            &[(6, 20)]
        );
    }

    #[test]
    fn empty_table_emits_headers() {
        let t = DepthTable::default();
        assert_eq!(
            emit_table(&t, TableFormat::Csv).unwrap(),
            CSV_HEADER.join(",") + "\n"
        );
        let md = emit_table(&t, TableFormat::Markdown).unwrap();
        assert_eq!(md.lines().count(), 1);
        assert_eq!(emit_table(&t, TableFormat::Json).unwrap().trim(), "[]");
    }

    #[test]
    fn single_cell_and_na_rendering() {
        let t = DepthTable {
            cells: vec![cell("grid-6x6", McxMethod::VChain, 5, Some(68))],
        };
        let csv = emit_table(&t, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().nth(1).unwrap(), "grid-6x6,vchain,5,3,68,34,0,ok");

        let t = DepthTable {
            cells: vec![cell("guadalupe", McxMethod::VChain, 9, None)],
        };
        let csv = emit_table(&t, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), "guadalupe,vchain,9,7,NA,NA,NA,NA");
        let md = emit_table(&t, TableFormat::Markdown).unwrap();
        assert!(md.contains("| 9 | NA (-) |"));
    }

    #[test]
    fn csv_round_trip() {
        let t = DepthTable {
            cells: vec![
                cell("a", McxMethod::VChain, 3, Some(40)),
                cell("a", McxMethod::Recursion, 3, None),
                cell("b", McxMethod::DirtyVChain, 4, Some(77)),
            ],
        };
        let csv = emit_table(&t, TableFormat::Csv).unwrap();
        assert_eq!(DepthTable::from_csv(&csv, 0).unwrap(), t);
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        let c = ExperimentConfig {
            control_range: (3, 12),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            allow_large: true,
            ..c
        };
        assert!(c.validate().is_ok());
        let parsed = ExperimentConfig::from_json(
            r#"{"topologies": ["grid:3x3", "full"], "methods": ["vchain"], "control_range": [3, 4]}"#,
        )
        .unwrap();
        assert_eq!(parsed.topologies.len(), 2);
        assert!(ExperimentConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"topologies": ["ring"]}"#).is_err());
    }

    #[test]
    fn small_run_is_deterministic() {
        let config = ExperimentConfig {
            topologies: vec![TopologySpec::Grid(3, 3), TopologySpec::FullyConnected],
            methods: vec![McxMethod::VChain, McxMethod::Recursion],
            control_range: (3, 5),
            ..Default::default()
        };
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cells.len(), 12);
        // Recursion is NA below 5 controls, v-chain at 5 needs 9 qubits.
        assert!(!a.get("grid-3x3", McxMethod::Recursion, 4).unwrap().is_ok());
        assert!(a.get("grid-3x3", McxMethod::VChain, 5).unwrap().is_ok());
        assert!(a.get("fully-connected", McxMethod::Recursion, 5).unwrap().is_ok());
    }
}
