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

//! The ten acceptance criteria. Runs without the test harness so that every
//! criterion prints one PASS or FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use mcxdepth_core::{
    ancilla_requirement, build_mcx_vchain, check_mcx, emit_table, realize, routed_fidelity, run_experiment,
    run_experiment_with, AncillaMode, DepthTable, ExperimentConfig, GateKind, McxMethod, McxSpec,
    TableFormat,
};

type Verdict = Result<String, String>;

const CONTROLS: std::ops::RangeInclusive<usize> = 3..=10;
const SPARSE: [&str; 5] = ["grid-6x6", "hex-3x3", "guadalupe", "toronto", "washington"];
const ALL_TOPOLOGIES: [&str; 6] = [
    "fully-connected",
    "grid-6x6",
    "hex-3x3",
    "guadalupe",
    "toronto",
    "washington",
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn depth(table: &DepthTable, topo: &str, method: McxMethod, c: usize) -> Option<usize> {
    table.depth(topo, method, c)
}

fn gains(
    table: &DepthTable,
    topo: &str,
    method: McxMethod,
    controls: std::ops::RangeInclusive<usize>,
) -> Result<Vec<i64>, String> {
    controls
        .map(
            |c| match (depth(table, topo, method, c - 1), depth(table, topo, method, c)) {
                (Some(a), Some(b)) => Ok(b as i64 - a as i64),
                _ => Err(format!("{topo} {method} C={c}: missing depth")),
            },
        )
        .collect()
}

/// Criterion 1: every applicable (method, C) implements the MCX and restores its
/// ancillas, clean or dirty as the method promises.
fn functional_correctness() -> Verdict {
    let mut checked = 0;
    let mut largest = 0;
    for method in McxMethod::ALL {
        for c in CONTROLS {
            let Ok(spec) = McxSpec::new(method, c) else {
                continue;
            };
            let circuit = realize(&spec).map_err(|e| e.to_string())?;
            let mode = if method.tolerates_dirty_ancillas() {
                AncillaMode::Dirty
            } else {
                AncillaMode::Clean
            };
            let r = check_mcx(&circuit, c, mode).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{method} C={c}: {r:?}"))?;
            ensure(
                r.truth_table_cases >= 1 << (c + 1) && r.random_states >= 20,
                || {
                    format!(
                        "{method} C={c}: only {} cases, {} states",
                        r.truth_table_cases, r.random_states
                    )
                },
            )?;
            checked += 1;
            largest = largest.max(circuit.num_qubits());
        }
    }
    Ok(format!("{checked} instances, largest {largest} qubits"))
}

/// Criterion 2: the requirement table and the realized registers agree on
/// ancilla counts.
fn ancilla_contracts() -> Verdict {
    // Parenthesized counts per control count 3..=10; None is an NA cell.
    let table: [(McxMethod, [Option<usize>; 8]); 4] = [
        (McxMethod::VChain, [1, 2, 3, 4, 5, 6, 7, 8].map(Some)),
        (McxMethod::DirtyVChain, [1, 2, 3, 4, 5, 6, 7, 8].map(Some)),
        (
            McxMethod::Recursion,
            [None, None, Some(1), Some(1), Some(1), Some(1), Some(1), Some(1)],
        ),
        (McxMethod::NoAncilla, [0; 8].map(Some)),
    ];
    for (method, counts) in table {
        for (c, expected) in CONTROLS.zip(counts) {
            let req = ancilla_requirement(method, c);
            match expected {
                Some(n) => {
                    ensure(req == n, || {
                        format!("{method} C={c}: requirement {req}, expected {n}")
                    })?;
                    let circuit = realize(&McxSpec::new(method, c).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    let carried = circuit.ancilla_count();
                    ensure(carried == n, || {
                        format!("{method} C={c}: circuit has {carried} ancillas")
                    })?;
                }
                None => {
                    ensure(req == 0, || {
                        format!("{method} C={c}: requirement {req} below threshold")
                    })?;
                    ensure(McxSpec::new(method, c).is_err(), || {
                        format!("{method} C={c} should be NA")
                    })?;
                }
            }
        }
    }
    Ok("32 cells match".into())
}

/// Criterion 3: clean v-chain: 2C−3 Toffoli-type stages, mirrored around the target
/// stage.
fn vchain_stages() -> Verdict {
    for c in CONTROLS {
        // One stage for the first two controls, one per control up to C−2.
        let oracle = 2 * (1 + (2..=c - 2).count()) + 1;
        let circuit = build_mcx_vchain(c, false).map_err(|e| e.to_string())?;
        let gates = circuit.gates();
        let stages = gates
            .iter()
            .filter(|g| matches!(g.kind(), GateKind::CCX | GateKind::RCCX | GateKind::RCCXdg))
            .count();
        ensure(
            stages == oracle && stages == 2 * c - 3 && stages == gates.len(),
            || {
                format!(
                    "C={c}: {stages} stages in {} gates, expected {oracle}",
                    gates.len()
                )
            },
        )?;
        let mid = gates.len() / 2;
        ensure(gates[mid].kind() == GateKind::CCX, || {
            format!("C={c}: middle stage is {}", gates[mid])
        })?;
        for i in 0..mid {
            let (a, b) = (&gates[i], &gates[gates.len() - 1 - i]);
            ensure(
                a.qubits() == b.qubits() && a.kind() == GateKind::RCCX && b.kind() == GateKind::RCCXdg,
                || format!("C={c}: stage {i} ({a}) does not mirror ({b})"),
            )?;
        }
    }
    Ok("C = 3..10".into())
}

/// Criterion 4: v-chain depth grows by a constant step on the complete graph and a
/// bounded one on grid and hex.
fn linear_vchain(table: &DepthTable) -> Verdict {
    let full = gains(table, "fully-connected", McxMethod::VChain, 5..=10)?;
    ensure(full.windows(2).all(|w| w[0] == w[1]), || {
        format!("complete-graph gains {full:?}")
    })?;
    let mut notes = vec![format!("full {}", full[0])];
    for topo in ["grid-6x6", "hex-3x3"] {
        let g = gains(table, topo, McxMethod::VChain, 5..=10)?;
        let (lo, hi) = (*g.iter().min().unwrap(), *g.iter().max().unwrap());
        let ratio = hi as f64 / lo as f64;
        ensure(lo > 0 && ratio <= 2.5, || {
            format!("{topo} gains {g:?}, max/min {ratio:.2}")
        })?;
        notes.push(format!("{topo} {ratio:.2}"));
    }
    Ok(notes.join(", "))
}

/// Criterion 5: no-ancilla depth roughly doubles per control on the complete graph.
fn exponential_baseline(table: &DepthTable) -> Verdict {
    let mut ratios = Vec::new();
    for c in 6..=9 {
        let (a, b) = (
            depth(table, "fully-connected", McxMethod::NoAncilla, c).ok_or("missing cell")?,
            depth(table, "fully-connected", McxMethod::NoAncilla, c + 1).ok_or("missing cell")?,
        );
        let r = b as f64 / a as f64;
        ensure((1.8..=2.2).contains(&r), || {
            format!("C={c}: {a} -> {b}, ratio {r:.3}")
        })?;
        ratios.push(format!("{r:.2}"));
    }
    Ok(format!("ratios {}", ratios.join(" ")))
}

/// Criterion 6: v-chain < recursion < no-ancilla on every sparse topology for C ≥ 6.
fn method_ordering(table: &DepthTable) -> Verdict {
    let mut compared = 0;
    for topo in SPARSE {
        for c in 6..=10 {
            let v = depth(table, topo, McxMethod::VChain, c);
            let r = depth(table, topo, McxMethod::Recursion, c)
                .ok_or(format!("{topo} C={c}: recursion missing"))?;
            let n = depth(table, topo, McxMethod::NoAncilla, c)
                .ok_or(format!("{topo} C={c}: no-ancilla missing"))?;
            ensure(r < n, || format!("{topo} C={c}: recursion {r} >= no-ancilla {n}"))?;
            if let Some(v) = v {
                ensure(v < r, || format!("{topo} C={c}: v-chain {v} >= recursion {r}"))?;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} control counts"))
}

/// Criterion 7: dirty v-chain is always deeper than the clean one.
fn dirty_costs_more(table: &DepthTable) -> Verdict {
    let mut compared = 0;
    for topo in ALL_TOPOLOGIES {
        for c in CONTROLS {
            if let (Some(clean), Some(dirty)) = (
                depth(table, topo, McxMethod::VChain, c),
                depth(table, topo, McxMethod::DirtyVChain, c),
            ) {
                ensure(dirty > clean, || {
                    format!("{topo} C={c}: dirty {dirty} <= clean {clean}")
                })?;
                compared += 1;
            }
        }
    }
    ensure(compared == 6 * 8 - 2, || format!("only {compared} pairs"))?;
    Ok(format!("{compared} pairs"))
}

/// Criterion 8: a 16-qubit device cannot host the v-chains past eight controls.
fn na_policy(table: &DepthTable) -> Verdict {
    for method in [McxMethod::VChain, McxMethod::DirtyVChain] {
        for c in CONTROLS {
            let cell = table
                .get("guadalupe", method, c)
                .ok_or(format!("{method} C={c} missing"))?;
            let want_na = c >= 9;
            ensure(cell.is_ok() != want_na, || {
                format!("guadalupe {method} C={c}: {:?}", cell.status)
            })?;
        }
    }
    for method in [McxMethod::Recursion, McxMethod::NoAncilla] {
        for c in method.min_controls().max(3)..=10 {
            let ok = table.get("guadalupe", method, c).is_some_and(|cell| cell.is_ok());
            ensure(ok, || format!("guadalupe {method} C={c} should fit"))?;
        }
    }
    Ok("v-chains NA at C = 9, 10".into())
}

/// Criterion 9: CX placement and, up to sixteen logical qubits, simulated
/// equivalence. Both are collected while the table is built.
fn routing_semantics(failures: &[String], routed: usize, simulated: usize) -> Verdict {
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{routed} circuits on edges, {simulated} simulated"))
}

/// Criterion 10: the default benchmark is reproducible byte for byte.
fn determinism(first_csv: &str) -> Verdict {
    let again = run_experiment(&ExperimentConfig::default()).map_err(|e| e.to_string())?;
    let second = emit_table(&again, TableFormat::Csv).map_err(|e| e.to_string())?;
    ensure(first_csv == second, || "csv differs between runs".into())?;
    Ok(format!("{} bytes", first_csv.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut results: Vec<(usize, &str, Verdict)> = vec![
        (1, "functional correctness", functional_correctness()),
        (2, "ancilla contracts", ancilla_contracts()),
        (3, "v-chain stage count", vchain_stages()),
    ];

    let failures = Mutex::new(Vec::new());
    let counts = Mutex::new((0usize, 0usize));
    let table = run_experiment_with(&ExperimentConfig::default(), |cell, spec, graph, r| {
        let mut bad = Vec::new();
        let off_edge = r
            .circuit
            .gates()
            .iter()
            .filter(|g| g.arity() == 2 && !graph.is_edge(g.qubits()[0], g.qubits()[1]))
            .count();
        if off_edge > 0 {
            bad.push(format!(
                "{} {} C={}: {off_edge} CX off the graph",
                cell.topology, cell.method, cell.controls
            ));
        }
        let simulate = spec.total_qubits() <= 16;
        if simulate {
            let fidelity = realize(spec).and_then(|logical| {
                routed_fidelity(
                    &logical,
                    &r.circuit,
                    r.initial_layout.logical_to_physical(),
                    r.final_layout.logical_to_physical(),
                    3,
                    cell.controls as u64,
                )
            });
            match fidelity {
                Ok(f) if f >= 1.0 - 1e-8 => {}
                Ok(f) => bad.push(format!(
                    "{} {} C={}: fidelity {f}",
                    cell.topology, cell.method, cell.controls
                )),
                Err(e) => bad.push(format!(
                    "{} {} C={}: {e}",
                    cell.topology, cell.method, cell.controls
                )),
            }
        }
        let mut c = counts.lock().unwrap();
        c.0 += 1;
        c.1 += usize::from(simulate);
        failures.lock().unwrap().extend(bad);
    });
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            println!("benchmark failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let csv = emit_table(&table, TableFormat::Csv).unwrap_or_default();
    let mut failures = failures.into_inner().unwrap();
    failures.sort();
    let (routed, simulated) = counts.into_inner().unwrap();

    results.push((4, "linear v-chain growth", linear_vchain(&table)));
    results.push((5, "exponential baseline", exponential_baseline(&table)));
    results.push((6, "method ordering", method_ordering(&table)));
    results.push((7, "dirty costs more", dirty_costs_more(&table)));
    results.push((8, "NA policy", na_policy(&table)));
    results.push((
        9,
        "routing legality and semantics",
        routing_semantics(&failures, routed, simulated),
    ));
    results.push((10, "determinism", determinism(&csv)));

    let mut all = true;
    for (id, name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("criterion {id:>2} {name:<32} PASS  {detail}"),
            Err(why) => {
                all = false;
                println!("criterion {id:>2} {name:<32} FAIL  {why}");
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.iter().filter(|r| r.2.is_ok()).count(),
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
