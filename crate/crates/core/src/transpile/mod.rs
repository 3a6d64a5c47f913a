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

//! Basis lowering, placement, routing and cleanup.

mod layout;
mod peephole;
mod route;

use serde::{Deserialize, Serialize};

pub use layout::{initial_layout, Layout};
pub use peephole::{peephole, u_angles};
pub use route::{route, Routed};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::library::{ccx_gates, rccx_gates, single_qubit_matrix, swap_gates};
use crate::mcx::{no_ancilla_gates, realize, McxSpec};
use crate::topology::CouplingGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TranspileOptions {
    pub seed: u64,
    pub lookahead_weight: f64,
    pub lookahead_window: usize,
    pub peephole: bool,
    /// Upper bound on layout trials. Trial 0 starts from
    /// [`initial_layout`] with `seed`; later trials start from re-seeded
    /// layouts.
    pub layout_trials: usize,
    /// Backward/forward routing passes used to improve each trial layout.
    pub refine_rounds: usize,
    /// Caps trials so that trials × passes × CX count stays below this.
    pub trial_budget: usize,
}

impl Default for TranspileOptions {
    fn default() -> Self {
        TranspileOptions {
            seed: 0,
            lookahead_weight: 0.5,
            lookahead_window: 20,
            peephole: true,
            layout_trials: 64,
            refine_rounds: 2,
            trial_budget: 400_000,
        }
    }
}

impl TranspileOptions {
    pub fn with_seed(seed: u64) -> Self {
        TranspileOptions {
            seed,
            ..Self::default()
        }
    }

    /// One trial, no refinement: exactly `initial_layout` then `route`.
    pub fn single_pass(seed: u64) -> Self {
        TranspileOptions {
            seed,
            layout_trials: 1,
            refine_rounds: 0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lookahead_weight >= 0.0 && self.lookahead_weight.is_finite()) {
            return Err(Error::Config(format!(
                "lookahead weight must be finite and non-negative, got {}",
                self.lookahead_weight
            )));
        }
        Ok(())
    }

    fn trials_for(&self, cx_count: usize) -> usize {
        let passes = 2 * self.refine_rounds + 1;
        (self.trial_budget / (cx_count.max(1) * passes)).clamp(1, self.layout_trials.max(1))
    }
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    if trial == 0 {
        return seed;
    }
    // Any nonzero value reshuffles ties in the layout.
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(trial as u64)
        .max(1)
}

/// Output of [`transpile`].
#[derive(Debug, Clone, PartialEq)]
pub struct TranspiledResult {
    /// Basis circuit on the physical register.
    pub circuit: Circuit,
    pub depth: usize,
    pub two_qubit_depth: usize,
    pub swap_count: usize,
    pub initial_layout: Layout,
    pub final_layout: Layout,
}

/// Rewrites every gate into `{U, CX}`.
pub fn lower_to_basis(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.num_qubits());
    out.set_roles(circuit.roles().to_vec())?;
    for g in circuit.gates() {
        lower_gate(g, &mut |b| out.append(b))?;
    }
    Ok(out)
}

fn lower_gate(g: &Gate, emit: &mut impl FnMut(Gate) -> Result<()>) -> Result<()> {
    use std::f64::consts::PI;
    let q = g.qubits();
    match g.kind() {
        GateKind::U | GateKind::CX => emit(g.clone()),
        GateKind::X => emit(Gate::u(PI, 0.0, PI, q[0])),
        GateKind::H => emit(Gate::u(PI / 2.0, 0.0, PI, q[0])),
        GateKind::T => emit(Gate::phase(PI / 4.0, q[0])),
        GateKind::Tdg => emit(Gate::phase(-PI / 4.0, q[0])),
        GateKind::SX | GateKind::SXdg | GateKind::RZ => {
            let (t, p, l) = u_angles(&single_qubit_matrix(g).expect("single-qubit"));
            emit(Gate::u(t, p, l, q[0]))
        }
        GateKind::CCX => ccx_gates(q[0], q[1], q[2])
            .iter()
            .try_for_each(|s| lower_gate(s, emit)),
        GateKind::RCCX => rccx_gates(q[0], q[1], q[2])
            .iter()
            .try_for_each(|s| lower_gate(s, emit)),
        GateKind::RCCXdg => rccx_gates(q[0], q[1], q[2])
            .iter()
            .rev()
            .try_for_each(|s| lower_gate(&s.inverse()?, emit)),
        GateKind::Swap => swap_gates(q[0], q[1]).into_iter().try_for_each(emit),
        GateKind::Mcx(k) => no_ancilla_gates(&q[..k], q[k])
            .iter()
            .try_for_each(|s| lower_gate(s, emit)),
    }
}

/// Lowers only what OpenQASM 2.0 export cannot name directly (MCX, RCCX and
/// the daggered forms); CCX and SWAP are kept.
pub fn lower_for_export(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.num_qubits());
    out.set_roles(circuit.roles().to_vec())?;
    for g in circuit.gates() {
        let q = g.qubits();
        match g.kind() {
            GateKind::RCCX => out.extend(rccx_gates(q[0], q[1], q[2]))?,
            GateKind::RCCXdg => {
                for s in rccx_gates(q[0], q[1], q[2]).iter().rev() {
                    out.append(s.inverse()?)?;
                }
            }
            GateKind::Mcx(k) => out.extend(no_ancilla_gates(&q[..k], q[k]))?,
            GateKind::SXdg => lower_gate(g, &mut |b| out.append(b))?,
            _ => out.append(g.clone())?,
        }
    }
    Ok(out)
}

/// Lower → place → route → (peephole) → measure.
///
/// Placement and routing run as a set of trials. Each trial routes forward
/// from its start layout, then alternately routes the reversed circuit and
/// the circuit again, each time starting from where the previous pass ended.
/// Every forward pass is a candidate; the shallowest wins, then the one with
/// fewer swaps, then the earliest. Complete graphs need a single pass.
pub fn transpile(
    circuit: &Circuit,
    graph: &CouplingGraph,
    options: &TranspileOptions,
) -> Result<TranspiledResult> {
    options.validate()?;
    let basis = lower_to_basis(circuit)?;
    let start = initial_layout(&basis, graph, options.seed)?;
    let padded = basis.padded(graph.num_qubits());
    let finish = |layout: Layout| -> Result<TranspiledResult> {
        let routed = route(&padded, graph, &layout, options)?;
        let circuit = if options.peephole {
            peephole(&routed.circuit)?
        } else {
            routed.circuit
        };
        Ok(TranspiledResult {
            depth: circuit.depth(),
            two_qubit_depth: circuit.two_qubit_depth(),
            swap_count: routed.swaps,
            initial_layout: layout,
            final_layout: routed.final_layout,
            circuit,
        })
    };
    if graph.is_complete() {
        return finish(start);
    }

    let reversed = Circuit::from_parts_unchecked(
        padded.num_qubits(),
        padded.roles().to_vec(),
        padded.gates().iter().rev().cloned().collect(),
    );
    let cx_count = padded.gates().iter().filter(|g| g.arity() == 2).count();
    let mut best: Option<TranspiledResult> = None;
    for trial in 0..options.trials_for(cx_count) {
        let mut layout = if trial == 0 {
            start.clone()
        } else {
            initial_layout(&basis, graph, trial_seed(options.seed, trial))?
        };
        for round in 0..=options.refine_rounds {
            if round > 0 {
                let back = route(&reversed, graph, &layout, options)?;
                layout = back.final_layout;
            }
            let candidate = finish(layout.clone())?;
            let better = best
                .as_ref()
                .is_none_or(|b| (candidate.depth, candidate.swap_count) < (b.depth, b.swap_count));
            let next = candidate.final_layout.clone();
            if better {
                best = Some(candidate);
            }
            layout = next;
        }
    }
    Ok(best.expect("at least one trial"))
}

/// [`realize`] followed by [`transpile`].
pub fn transpile_spec(
    spec: &McxSpec,
    graph: &CouplingGraph,
    options: &TranspileOptions,
) -> Result<TranspiledResult> {
    transpile(&realize(spec)?, graph, options)
}
