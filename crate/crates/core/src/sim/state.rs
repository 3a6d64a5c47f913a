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

use std::collections::HashMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::library::{gate_unitary, single_qubit_matrix};

/// Largest register the dense engine accepts (16M amplitudes).
pub const MAX_QUBITS: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense statevector. Qubit `q` is bit `q` of the basis-state index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_cap(num_qubits)?;
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::RegisterMismatch(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        check_cap(num_qubits)?;
        Ok(StateVector { num_qubits, amps })
    }

    /// Normalized state with i.i.d. Gaussian amplitude components.
    pub fn random(num_qubits: usize, seed: u64) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::RegisterMismatch("random state needs a qubit".into()));
        }
        check_cap(num_qubits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << num_qubits)
            .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { num_qubits, amps })
    }

    /// `self ⊗ other`, with `other` on the high qubits.
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector> {
        let n = self.num_qubits + high.num_qubits;
        check_cap(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        Ok(StateVector { num_qubits: n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Max amplitude error after aligning the global phase on the largest
    /// amplitude of `reference`.
    pub fn max_error_up_to_phase(&self, reference: &StateVector) -> f64 {
        assert_eq!(self.num_qubits, reference.num_qubits);
        let (idx, _) = reference
            .amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("non-empty state");
        let phase = if self.amps[idx].norm() < 1e-15 {
            Complex64::new(1.0, 0.0)
        } else {
            let r = reference.amps[idx] / self.amps[idx];
            r / r.norm()
        };
        self.amps
            .iter()
            .zip(&reference.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }

    /// Relabels qubits: the state of qubit `q` moves to qubit `map[q]`.
    pub fn permute_qubits(&self, map: &[usize]) -> StateVector {
        assert_eq!(map.len(), self.num_qubits);
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = map
                .iter()
                .enumerate()
                .fold(0, |acc, (q, &to)| acc | (((i >> q) & 1) << to));
            amps[j] = *a;
        }
        StateVector {
            num_qubits: self.num_qubits,
            amps,
        }
    }

    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() > self.num_qubits {
            return Err(Error::RegisterMismatch(format!(
                "{}-qubit circuit on a {}-qubit state",
                circuit.num_qubits(),
                self.num_qubits
            )));
        }
        circuit.gates().iter().try_for_each(|g| self.apply_gate(g))
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        let qs = gate.qubits();
        match gate.kind() {
            GateKind::CX | GateKind::CCX | GateKind::Mcx(_) => {
                let (controls, target) = qs.split_at(qs.len() - 1);
                self.controlled_flip(controls, target[0]);
            }
            GateKind::Swap => self.swap(qs[0], qs[1]),
            k if k.arity() == 1 => {
                let m = single_qubit_matrix(gate).expect("single-qubit kind");
                self.single(qs[0], &m);
            }
            _ => {
                let u = gate_unitary(gate)?;
                self.dense(qs, u.entries());
            }
        }
        Ok(())
    }

    fn single(&mut self, q: usize, m: &[Complex64; 4]) {
        let bit = 1usize << q;
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + bit {
                let a0 = self.amps[i];
                let a1 = self.amps[i | bit];
                self.amps[i] = m[0] * a0 + m[1] * a1;
                self.amps[i | bit] = m[2] * a0 + m[3] * a1;
            }
            base += 2 * bit;
        }
    }

    fn controlled_flip(&mut self, controls: &[usize], target: usize) {
        let cmask: usize = controls.iter().map(|&c| 1usize << c).sum();
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask == cmask && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        let (ba, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ba != 0 && i & bb == 0 {
                self.amps.swap(i, (i ^ ba) | bb);
            }
        }
    }

    fn dense(&mut self, qubits: &[usize], m: &[Complex64]) {
        let k = qubits.len();
        let local = 1usize << k;
        let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let offsets: Vec<usize> = (0..local)
            .map(|l| {
                qubits
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (j, &q)| acc | (((l >> j) & 1) << q))
            })
            .collect();
        let mut buf = vec![ZERO; local];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                let row = &m[r * local..(r + 1) * local];
                self.amps[base | off] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
            }
        }
    }
}

fn check_cap(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_QUBITS {
        Err(Error::SimulationCap(num_qubits))
    } else {
        Ok(())
    }
}

/// Sparse amplitude map, efficient when a circuit keeps basis inputs close to
/// basis states (permutations and phases). Used for truth-table sweeps.
#[derive(Debug, Clone, Default)]
pub struct SparseState {
    amps: HashMap<usize, Complex64>,
}

impl SparseState {
    pub fn basis(index: usize) -> Self {
        let mut amps = HashMap::new();
        amps.insert(index, Complex64::new(1.0, 0.0));
        SparseState { amps }
    }

    /// Builds a state from `(index, amplitude)` pairs; zero entries are
    /// dropped and repeated indices add up.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Complex64)>) -> Self {
        let mut amps: HashMap<usize, Complex64> = HashMap::new();
        for (i, a) in entries {
            *amps.entry(i).or_insert(ZERO) += a;
        }
        amps.retain(|_, a| *a != ZERO);
        SparseState { amps }
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps.get(&index).copied().unwrap_or(ZERO)
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitude(index).norm_sqr()
    }

    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.amps.iter().map(|(&i, &a)| (i, a))
    }

    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        circuit.gates().iter().try_for_each(|g| self.apply_gate(g))
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let qs = gate.qubits();
        match gate.kind() {
            GateKind::X | GateKind::CX | GateKind::CCX | GateKind::Mcx(_) => {
                let (controls, target) = qs.split_at(qs.len() - 1);
                let cmask: usize = controls.iter().map(|&c| 1usize << c).sum();
                let tbit = 1usize << target[0];
                self.remap(|i| if i & cmask == cmask { i ^ tbit } else { i });
            }
            GateKind::Swap => {
                let (a, b) = (qs[0], qs[1]);
                self.remap(|i| {
                    let (x, y) = ((i >> a) & 1, (i >> b) & 1);
                    if x == y {
                        i
                    } else {
                        i ^ (1 << a) ^ (1 << b)
                    }
                });
            }
            _ => {
                let u = gate_unitary(gate)?;
                let local = u.dim();
                let mask: usize = qs.iter().map(|&q| 1usize << q).sum();
                let deposit = |l: usize| {
                    qs.iter()
                        .enumerate()
                        .fold(0usize, |acc, (j, &q)| acc | (((l >> j) & 1) << q))
                };
                let mut next: HashMap<usize, Complex64> = HashMap::with_capacity(self.amps.len());
                for (&i, &a) in &self.amps {
                    let col = qs
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (j, &q)| acc | (((i >> q) & 1) << j));
                    let rest = i & !mask;
                    for row in 0..local {
                        let m = u.get(row, col);
                        if m != ZERO {
                            *next.entry(rest | deposit(row)).or_insert(ZERO) += m * a;
                        }
                    }
                }
                next.retain(|_, a| a.norm_sqr() > 1e-28);
                self.amps = next;
            }
        }
        Ok(())
    }

    fn remap(&mut self, f: impl Fn(usize) -> usize) {
        self.amps = self.amps.drain().map(|(i, a)| (f(i), a)).collect();
    }
}
