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

#![allow(dead_code)]

use mcxdepth_core::{Circuit, Gate, GateKind};
use proptest::prelude::*;

/// Raw material for one random gate: a kind selector, four qubit picks and
/// three angles.
pub type RawGate = (u8, [usize; 4], [f64; 3]);

pub fn raw_gates(max_len: usize) -> impl Strategy<Value = Vec<RawGate>> {
    prop::collection::vec(
        (
            any::<u8>(),
            [0usize..1000, 0usize..1000, 0usize..1000, 0usize..1000],
            [-4.0f64..4.0, -4.0f64..4.0, -4.0f64..4.0],
        ),
        0..=max_len,
    )
}

/// Picks `k` distinct qubits out of `n` from the raw values.
fn pick(n: usize, raw: [usize; 4], k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(k);
    for r in raw.iter().take(k) {
        out.push(pool.remove(r % pool.len()));
    }
    out
}

/// Builds a gate from any library kind that fits on `n` qubits. With `basis`
/// only U and CX come out.
pub fn gate_from_raw(n: usize, (sel, raw, ang): RawGate, basis: bool) -> Gate {
    let kinds: &[GateKind] = if basis {
        &[GateKind::U, GateKind::CX]
    } else {
        &[
            GateKind::X,
            GateKind::H,
            GateKind::T,
            GateKind::Tdg,
            GateKind::SX,
            GateKind::SXdg,
            GateKind::RZ,
            GateKind::U,
            GateKind::CX,
            GateKind::Swap,
            GateKind::CCX,
            GateKind::RCCX,
            GateKind::RCCXdg,
            GateKind::Mcx(3),
        ]
    };
    let fitting: Vec<GateKind> = kinds.iter().copied().filter(|k| k.arity() <= n).collect();
    let kind = fitting[sel as usize % fitting.len()];
    let qubits = pick(n, raw, kind.arity());
    let params = ang[..kind.num_params()].to_vec();
    Gate::new(kind, params, qubits).expect("valid random gate")
}

pub fn circuit_from_raw(n: usize, raw: &[RawGate], basis: bool) -> Circuit {
    Circuit::from_gates(n, raw.iter().map(|&r| gate_from_raw(n, r, basis))).expect("valid random circuit")
}

pub fn random_circuit(max_qubits: usize, max_len: usize, basis: bool) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits, raw_gates(max_len)).prop_map(move |(n, raw)| circuit_from_raw(n, &raw, basis))
}
