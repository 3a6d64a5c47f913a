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

//! Gate semantics and fixed lowerings into the `{U, CX}` basis.
//!
//! Local index convention: bit `j` of a matrix row/column index is the state
//! of `gate.qubits()[j]`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Largest multi-controlled X that [`gate_unitary`] will materialize.
pub const MAX_DENSE_MCX_CONTROLS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Unitary { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Unitary { dim, data }
    }

    /// Permutation matrix sending basis state `i` to `perm(i)`.
    pub fn permutation(dim: usize, perm: impl Fn(usize) -> usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for col in 0..dim {
            data[perm(col) * dim + col] = ONE;
        }
        Unitary { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// `self · rhs`.
    pub fn matmul(&self, rhs: &Unitary) -> Unitary {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Unitary { dim: n, data }
    }

    pub fn adjoint(&self) -> Unitary {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Unitary { dim: n, data }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Max entry deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        max_abs_diff(&p, &Unitary::identity(self.dim))
    }

    /// Max entry distance to `other` after removing the best global phase.
    pub fn distance_up_to_phase(&self, other: &Unitary) -> f64 {
        assert_eq!(self.dim, other.dim);
        // Align on the largest entry of `other`.
        let (idx, _) = other
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty matrix");
        let phase = if self.data[idx].norm() < 1e-12 {
            ONE
        } else {
            let r = other.data[idx] / self.data[idx];
            r / r.norm()
        };
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}

fn max_abs_diff(a: &Unitary, b: &Unitary) -> f64 {
    a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `U(θ, φ, λ)` as a 2×2 matrix.
pub fn u_matrix(theta: f64, phi: f64, lambda: f64) -> [Complex64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        Complex64::new(c, 0.0),
        -Complex64::from_polar(s, lambda),
        Complex64::from_polar(s, phi),
        Complex64::from_polar(c, phi + lambda),
    ]
}

/// 2×2 matrix of a single-qubit gate, row-major.
pub fn single_qubit_matrix(gate: &Gate) -> Option<[Complex64; 4]> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let m = match gate.kind() {
        GateKind::X => [ZERO, ONE, ONE, ZERO],
        GateKind::H => [h, h, h, -h],
        GateKind::T => [ONE, ZERO, ZERO, Complex64::from_polar(1.0, PI / 4.0)],
        GateKind::Tdg => [ONE, ZERO, ZERO, Complex64::from_polar(1.0, -PI / 4.0)],
        GateKind::SX => {
            let a = Complex64::new(0.5, 0.5);
            let b = Complex64::new(0.5, -0.5);
            [a, b, b, a]
        }
        GateKind::SXdg => {
            let a = Complex64::new(0.5, -0.5);
            let b = Complex64::new(0.5, 0.5);
            [a, b, b, a]
        }
        GateKind::RZ => {
            let t = gate.params()[0];
            [
                Complex64::from_polar(1.0, -t / 2.0),
                ZERO,
                ZERO,
                Complex64::from_polar(1.0, t / 2.0),
            ]
        }
        GateKind::U => {
            let p = gate.params();
            u_matrix(p[0], p[1], p[2])
        }
        _ => return None,
    };
    Some(m)
}

/// Exact unitary of `gate` in the local index convention.
pub fn gate_unitary(gate: &Gate) -> Result<Unitary> {
    if let Some(m) = single_qubit_matrix(gate) {
        return Ok(Unitary::from_rows(2, m.to_vec()));
    }
    let u = match gate.kind() {
        GateKind::CX => Unitary::permutation(4, |i| if i & 1 == 1 { i ^ 2 } else { i }),
        GateKind::Swap => Unitary::permutation(4, |i| ((i & 1) << 1) | ((i >> 1) & 1)),
        GateKind::CCX => Unitary::permutation(8, |i| if i & 3 == 3 { i ^ 4 } else { i }),
        GateKind::RCCX => rccx_matrix(),
        GateKind::RCCXdg => rccx_matrix().adjoint(),
        GateKind::Mcx(k) => {
            if k > MAX_DENSE_MCX_CONTROLS {
                return Err(Error::OversizedUnitary(gate.kind().name()));
            }
            let mask = (1usize << k) - 1;
            Unitary::permutation(1 << (k + 1), |i| if i & mask == mask { i ^ (1 << k) } else { i })
        }
        _ => unreachable!("single-qubit kinds handled above"),
    };
    Ok(u)
}

// CCX with relative phases: |11,0⟩ → i|11,1⟩, |11,1⟩ → -i|11,0⟩, |1,0,1⟩ → -|1,0,1⟩
// (bit order q0 q1 q2 = controls, target).
fn rccx_matrix() -> Unitary {
    let mut data = vec![ZERO; 64];
    for i in [0usize, 1, 2, 4, 6] {
        data[i * 8 + i] = ONE;
    }
    data[5 * 8 + 5] = -ONE;
    data[7 * 8 + 3] = I;
    data[3 * 8 + 7] = -I;
    Unitary::from_rows(8, data)
}

/// Standard 6-CX Clifford+T Toffoli on qubits `(0, 1) → 2`.
pub fn lower_ccx() -> Circuit {
    Circuit::from_parts_unchecked(3, vec![crate::circuit::QubitRole::Plain; 3], ccx_gates(0, 1, 2))
}

pub(crate) fn ccx_gates(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::h(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::cx(a, c),
        Gate::t(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::cx(a, c),
        Gate::t(b),
        Gate::t(c),
        Gate::h(c),
        Gate::cx(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cx(a, b),
    ]
}

/// Three-CX relative-phase Toffoli on qubits `(0, 1) → 2`.
pub fn lower_rccx() -> Circuit {
    Circuit::from_parts_unchecked(3, vec![crate::circuit::QubitRole::Plain; 3], rccx_gates(0, 1, 2))
}

pub(crate) fn rccx_gates(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::h(c),
        Gate::t(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::cx(a, c),
        Gate::t(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::h(c),
    ]
}

/// `SWAP(0, 1)` as three CX.
pub fn lower_swap() -> Circuit {
    Circuit::from_parts_unchecked(2, vec![crate::circuit::QubitRole::Plain; 2], swap_gates(0, 1))
}

pub(crate) fn swap_gates(a: usize, b: usize) -> Vec<Gate> {
    vec![Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)]
}

/// Unitary of a whole (small) circuit, built gate by gate.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Unitary> {
    let n = circuit.num_qubits();
    if n > 10 {
        return Err(Error::OversizedUnitary(format!("{n}-qubit circuit")));
    }
    let dim = 1usize << n;
    let mut acc = Unitary::identity(dim);
    for g in circuit.gates() {
        let local = gate_unitary(g)?;
        acc = embed(&local, g.qubits(), n).matmul(&acc);
    }
    Ok(acc)
}

/// Lifts a local gate matrix to the full `n`-qubit space.
pub fn embed(local: &Unitary, qubits: &[usize], n: usize) -> Unitary {
    let dim = 1usize << n;
    let k = qubits.len();
    let mut data = vec![ZERO; dim * dim];
    let extract = |i: usize| -> usize {
        qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &q)| acc | (((i >> q) & 1) << j))
    };
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    for col in 0..dim {
        let lc = extract(col);
        let rest = col & !mask;
        for lr in 0..(1usize << k) {
            let a = local.get(lr, lc);
            if a == ZERO {
                continue;
            }
            let row = qubits
                .iter()
                .enumerate()
                .fold(rest, |acc, (j, &q)| acc | (((lr >> j) & 1) << q));
            data[row * dim + col] = a;
        }
    }
    Unitary::from_rows(dim, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn x_matrix() {
        let u = gate_unitary(&Gate::x(0)).unwrap();
        assert_eq!(u.entries(), &[ZERO, ONE, ONE, ZERO]);
    }

    #[test]
    fn ccx_flips_on_both_controls() {
        let u = gate_unitary(&Gate::ccx(0, 1, 2)).unwrap();
        // |q2 q1 q0⟩ = |011⟩ is index 3 → index 7.
        assert_eq!(u.get(7, 3), ONE);
        assert_eq!(u.get(3, 3), ZERO);
    }

    // Truth-table oracle over all 32 basis states.
    #[test]
    fn mcx4_is_single_transposition() {
        let u = gate_unitary(&Gate::mcx(&[0, 1, 2, 3], 4).unwrap()).unwrap();
        let mut off_diag = 0;
        for col in 0..32usize {
            let controls_on = col & 0b1111 == 0b1111;
            let expect = if controls_on { col ^ 0b10000 } else { col };
            for row in 0..32 {
                let want = if row == expect { ONE } else { ZERO };
                assert_eq!(u.get(row, col), want);
                if row != col && u.get(row, col) != ZERO {
                    off_diag += 1;
                }
            }
        }
        assert_eq!(off_diag, 2);
    }

    #[test]
    fn oversized_mcx_rejected() {
        let controls: Vec<usize> = (0..13).collect();
        let g = Gate::mcx(&controls, 13).unwrap();
        assert!(matches!(gate_unitary(&g), Err(Error::OversizedUnitary(_))));
    }

    #[test]
    fn all_gate_unitaries_are_unitary() {
        let gates = [
            Gate::x(0),
            Gate::h(0),
            Gate::t(0),
            Gate::tdg(0),
            Gate::sx(0),
            Gate::rz(0.3, 0),
            Gate::u(0.4, -1.1, 2.3, 0),
            Gate::cx(0, 1),
            Gate::swap(0, 1),
            Gate::ccx(0, 1, 2),
            Gate::rccx(0, 1, 2),
            Gate::rccxdg(0, 1, 2),
        ];
        for g in gates {
            let u = gate_unitary(&g).unwrap();
            assert!(u.unitarity_error() < 1e-12, "{g}");
            let inv = gate_unitary(&g.inverse().unwrap()).unwrap();
            assert!(
                max_abs_diff(&inv, &u.adjoint()) < 1e-12,
                "inverse mismatch for {g}"
            );
        }
    }

    #[test]
    fn ccx_lowering_matches() {
        let low = lower_ccx();
        let u = circuit_unitary(&low).unwrap();
        let target = gate_unitary(&Gate::ccx(0, 1, 2)).unwrap();
        assert!(u.distance_up_to_phase(&target) < 1e-12);
        assert_eq!(low.count_ops()["cx"], 6);
        assert_eq!(low.two_qubit_depth(), 6);
        let zero = u.apply(&[ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO]);
        assert!(close(zero[0].norm().into(), ONE));
    }

    #[test]
    fn rccx_lowering_matches_matrix() {
        let low = lower_rccx();
        let u = circuit_unitary(&low).unwrap();
        assert!(max_abs_diff(&u, &rccx_matrix()) < 1e-12);
        assert_eq!(low.count_ops()["cx"], 3);
    }

    #[test]
    fn rccx_is_toffoli_up_to_relative_phase() {
        let u = gate_unitary(&Gate::rccx(0, 1, 2)).unwrap();
        for col in 0..8usize {
            let expect = if col & 3 == 3 { col ^ 4 } else { col };
            for row in 0..8 {
                let a = u.get(row, col);
                if row == expect {
                    assert!((a.norm() - 1.0).abs() < 1e-12);
                } else {
                    assert_eq!(a, ZERO);
                }
            }
        }
        // |110⟩ in q2q1q0 order is index 3.
        assert!(close(u.get(7, 3), I));
    }

    #[test]
    fn swap_lowering() {
        let low = lower_swap();
        let u = circuit_unitary(&low).unwrap();
        let swap = gate_unitary(&Gate::swap(0, 1)).unwrap();
        assert_eq!(max_abs_diff(&u, &swap), 0.0);
        // |01⟩ (q0 = 1) → |10⟩ (q1 = 1); |00⟩ fixed.
        assert_eq!(u.get(2, 1), ONE);
        assert_eq!(u.get(0, 0), ONE);
    }

    #[test]
    fn embed_respects_qubit_order() {
        // CX with control on qubit 2 and target on qubit 0 of a 3-qubit space.
        let cx = gate_unitary(&Gate::cx(2, 0)).unwrap();
        let full = embed(&cx, &[2, 0], 3);
        assert_eq!(full.get(0b101, 0b100), ONE);
        assert_eq!(full.get(0b001, 0b001), ONE);
    }
}
