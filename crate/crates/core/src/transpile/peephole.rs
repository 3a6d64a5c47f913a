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

//! Local cleanup: fuse single-qubit runs, cancel back-to-back CX pairs.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::library::single_qubit_matrix;

const EPS: f64 = 1e-12;

/// Fuses adjacent single-qubit gates on a wire into one `U` (dropping it if
/// it is the identity up to phase) and cancels adjacent identical CX pairs.
/// Cancellations cascade, so `U CX CX U` collapses to a single `U`.
pub fn peephole(circuit: &Circuit) -> Result<Circuit> {
    if let Some(g) = circuit.gates().iter().find(|g| !g.is_basis()) {
        return Err(Error::NotBasis(g.kind().name()));
    }
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(circuit.len());
    // Live output indices per wire, most recent last.
    let mut wires: Vec<Vec<usize>> = vec![Vec::new(); circuit.num_qubits()];

    for g in circuit.gates() {
        match *g.qubits() {
            [q] => {
                let top = wires[q].last().copied();
                if let Some(i) = top.filter(|&i| out[i].as_ref().is_some_and(|p| p.arity() == 1)) {
                    let prev = out[i].take().expect("live gate");
                    wires[q].pop();
                    let fused = fuse(&prev, g);
                    if let Some(f) = fused {
                        wires[q].push(out.len());
                        out.push(Some(f));
                    }
                } else if !is_identity(g) {
                    wires[q].push(out.len());
                    out.push(Some(g.clone()));
                }
            }
            [a, b] => {
                let (ta, tb) = (wires[a].last().copied(), wires[b].last().copied());
                let cancels = match (ta, tb) {
                    (Some(i), Some(j)) if i == j => out[i].as_ref() == Some(g),
                    _ => false,
                };
                if cancels {
                    let i = ta.expect("checked");
                    out[i] = None;
                    wires[a].pop();
                    wires[b].pop();
                } else {
                    wires[a].push(out.len());
                    wires[b].push(out.len());
                    out.push(Some(g.clone()));
                }
            }
            _ => unreachable!("basis gates have arity 1 or 2"),
        }
    }
    let mut result = Circuit::new(circuit.num_qubits());
    result.set_roles(circuit.roles().to_vec())?;
    result.extend(out.into_iter().flatten())?;
    Ok(result)
}

fn mat_mul(a: &[Complex64; 4], b: &[Complex64; 4]) -> [Complex64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// `second · first` as a single `U`, or `None` when it is the identity.
fn fuse(first: &Gate, second: &Gate) -> Option<Gate> {
    debug_assert_eq!(first.qubits(), second.qubits());
    let m = mat_mul(
        &single_qubit_matrix(second).expect("single-qubit"),
        &single_qubit_matrix(first).expect("single-qubit"),
    );
    let (theta, phi, lambda) = u_angles(&m);
    let g = Gate::u(theta, phi, lambda, first.qubits()[0]);
    (!is_identity(&g)).then_some(g)
}

fn is_identity(g: &Gate) -> bool {
    if g.kind() != GateKind::U {
        return false;
    }
    let m = single_qubit_matrix(g).expect("single-qubit");
    m[1].norm() < EPS && m[2].norm() < EPS && (m[3] / m[0] - 1.0).norm() < EPS
}

/// `(θ, φ, λ)` with `m = e^{iγ} U(θ, φ, λ)` for some global phase `γ`.
pub fn u_angles(m: &[Complex64; 4]) -> (f64, f64, f64) {
    let theta = 2.0 * m[2].norm().atan2(m[0].norm());
    if m[0].norm() > EPS {
        let gamma = m[0].arg();
        let sum = m[3].arg() - gamma;
        if m[2].norm() > EPS {
            let phi = m[2].arg() - gamma;
            (theta, wrap(phi), wrap(sum - phi))
        } else {
            (theta, 0.0, wrap(sum))
        }
    } else {
        // θ = π: only φ − λ matters up to phase; pin φ = 0.
        let gamma = m[2].arg();
        let lambda = (-m[1]).arg() - gamma;
        (theta, 0.0, wrap(lambda))
    }
}

fn wrap(a: f64) -> f64 {
    use std::f64::consts::PI;
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}
