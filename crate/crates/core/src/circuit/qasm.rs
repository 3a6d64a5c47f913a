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

//! OpenQASM 2.0 export.

use std::fmt::Write;

use super::circuit::Circuit;
use super::gate::{format_angle, GateKind};
use crate::error::{Error, Result};

/// Serializes a circuit whose gates lie in
/// `{x, h, t, tdg, sx, rz, u, cx, ccx, swap}`. Anything else must be lowered
/// first (see [`crate::transpile::lower_for_export`]).
pub fn to_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for g in circuit.gates() {
        let name = match g.kind() {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::SX => "sx",
            GateKind::RZ => "rz",
            GateKind::U => "u",
            GateKind::CX => "cx",
            GateKind::CCX => "ccx",
            GateKind::Swap => "swap",
            other => return Err(Error::NotExportable(other.name())),
        };
        out.push_str(name);
        if !g.params().is_empty() {
            let ps: Vec<String> = g.params().iter().map(|&p| format_angle(p)).collect();
            let _ = write!(out, "({})", ps.join(","));
        }
        let qs: Vec<String> = g.qubits().iter().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", qs.join(","));
    }
    Ok(out)
}
