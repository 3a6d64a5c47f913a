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

//! MCX equivalence checking against `target ^= AND(controls)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::state::{SparseState, StateVector, MAX_QUBITS};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Minimum fidelity for a check to pass.
pub const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;

const RANDOM_STATES: u64 = 20;
const PRODUCT_STATES: u64 = 4;
const DIRTY_PATTERNS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AncillaMode {
    /// Ancillas enter in `|0⟩`.
    Clean,
    /// Ancillas enter in an arbitrary state.
    Dirty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// Minimum over every check of the overlap with the ideal output.
    pub fidelity: f64,
    pub ancilla_restored: bool,
    /// Minimum overlap of the ancilla register with its input state.
    pub ancilla_fidelity: f64,
    /// Basis input (qubit 0 rightmost) with the worst truth-table result, if
    /// any failed.
    pub worst_basis_case: Option<String>,
    pub truth_table_cases: usize,
    pub random_states: usize,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.fidelity >= FIDELITY_THRESHOLD && self.ancilla_restored && self.worst_basis_case.is_none()
    }
}

/// Checks that `circuit` (controls `0..C`, target `C`, ancillas above) acts as
/// an MCX with `controls` controls and restores its ancillas.
pub fn check_mcx(circuit: &Circuit, controls: usize, mode: AncillaMode) -> Result<EquivalenceReport> {
    let n = circuit.num_qubits();
    if controls == 0 || n < controls + 1 {
        return Err(Error::RegisterMismatch(format!(
            "{n}-qubit circuit cannot hold {controls} controls and a target"
        )));
    }
    let sys = controls + 1;
    let anc = n - sys;
    let ctrl_mask = (1usize << controls) - 1;
    let tbit = 1usize << controls;
    let ideal = {
        let ctrl: Vec<usize> = (0..controls).collect();
        Gate::mcx(&ctrl, controls)?
    };

    let patterns: Vec<usize> = match mode {
        AncillaMode::Clean => vec![0],
        AncillaMode::Dirty if anc == 0 => vec![0],
        AncillaMode::Dirty if (1usize << anc) <= DIRTY_PATTERNS => (0..1usize << anc).collect(),
        AncillaMode::Dirty => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..DIRTY_PATTERNS)
                .map(|_| rng.random_range(0..1usize << anc))
                .collect()
        }
    };

    let mut fidelity: f64 = 1.0;
    let mut ancilla_fidelity: f64 = 1.0;
    let mut worst: Option<(f64, usize)> = None;
    let mut cases = 0;
    for &pattern in &patterns {
        for x in 0..1usize << sys {
            cases += 1;
            let input = x | (pattern << sys);
            let expect = if x & ctrl_mask == ctrl_mask {
                input ^ tbit
            } else {
                input
            };
            let mut s = SparseState::basis(input);
            s.apply(circuit)?;
            let p = s.probability(expect);
            let anc_mass: f64 = s
                .iter()
                .filter(|(i, _)| i >> sys == pattern)
                .map(|(_, a)| a.norm_sqr())
                .sum();
            fidelity = fidelity.min(p);
            ancilla_fidelity = ancilla_fidelity.min(anc_mass);
            if p < FIDELITY_THRESHOLD && worst.is_none_or(|(wp, _)| p < wp) {
                worst = Some((p, input));
            }
        }
    }

    for seed in 0..RANDOM_STATES {
        let input = match mode {
            AncillaMode::Clean => StateVector::random(sys, seed)?.tensor(&StateVector::zero(anc)?)?,
            AncillaMode::Dirty => StateVector::random(n, seed)?,
        };
        let mut out = input.clone();
        out.apply(circuit)?;
        let mut want = input;
        want.apply_gate(&ideal)?;
        fidelity = fidelity.min(want.fidelity(&out));
    }

    // Product inputs expose whether the ancilla register comes back intact.
    if anc > 0 {
        for seed in 0..PRODUCT_STATES {
            let a = match mode {
                AncillaMode::Clean => StateVector::zero(anc)?,
                AncillaMode::Dirty => StateVector::random(anc, 1000 + seed)?,
            };
            let mut out = StateVector::random(sys, 2000 + seed)?.tensor(&a)?;
            out.apply(circuit)?;
            ancilla_fidelity = ancilla_fidelity.min(project_high(&out, &a, sys));
        }
    }

    Ok(EquivalenceReport {
        fidelity,
        ancilla_restored: ancilla_fidelity >= FIDELITY_THRESHOLD,
        ancilla_fidelity,
        worst_basis_case: worst.map(|(_, i)| format!("{i:0n$b}")),
        truth_table_cases: cases,
        random_states: RANDOM_STATES as usize,
    })
}

// ‖(I ⊗ ⟨high|) state‖², the probability that the high register is found in
// `high`.
fn project_high(state: &StateVector, high: &StateVector, low_qubits: usize) -> f64 {
    let low = 1usize << low_qubits;
    let amps = state.amplitudes();
    (0..low)
        .map(|s| {
            high.amplitudes()
                .iter()
                .enumerate()
                .map(|(a, h)| h.conj() * amps[s | (a << low_qubits)])
                .sum::<num_complex::Complex64>()
                .norm_sqr()
        })
        .sum()
}

/// Smallest fidelity, over `samples` random inputs, between a routed circuit
/// and the logical circuit it came from.
///
/// `initial` and `final_layout` map logical to physical qubits before and
/// after routing; entries past `logical.num_qubits()` belong to idle padding,
/// which starts in `|0⟩`. Only physical qubits that hold logical data or are
/// touched by a gate are simulated, on a sparse state: routing adds only
/// permutations, so the support never exceeds `2^logical` entries.
pub fn routed_fidelity(
    logical: &Circuit,
    routed: &Circuit,
    initial: &[usize],
    final_layout: &[usize],
    samples: u64,
    seed: u64,
) -> Result<f64> {
    let n = logical.num_qubits();
    let phys = routed.num_qubits();
    if initial.len() != phys || final_layout.len() != phys || n > phys {
        return Err(Error::RegisterMismatch(format!(
            "{n}-qubit circuit routed onto {phys} qubits with layouts of {} and {}",
            initial.len(),
            final_layout.len()
        )));
    }
    if n > MAX_QUBITS {
        return Err(Error::SimulationCap(n));
    }
    let mut active = vec![false; phys];
    for q in 0..n {
        active[initial[q]] = true;
        active[final_layout[q]] = true;
    }
    for g in routed.gates() {
        for &q in g.qubits() {
            active[q] = true;
        }
    }
    let mut compact = vec![usize::MAX; phys];
    let mut width = 0;
    for (p, &on) in active.iter().enumerate() {
        if on {
            compact[p] = width;
            width += 1;
        }
    }
    if width >= usize::BITS as usize {
        return Err(Error::SimulationCap(width));
    }
    let routed = Circuit::from_gates(width, routed.gates().iter().map(|g| g.remapped(|q| compact[q])))?;
    let place = |x: usize, layout: &[usize]| -> usize {
        (0..n)
            .filter(|&q| x >> q & 1 == 1)
            .map(|q| 1usize << compact[layout[q]])
            .sum()
    };

    let mut worst = 1.0f64;
    for s in 0..samples {
        let input = StateVector::random(n, seed.wrapping_add(s))?;
        let mut expected = input.clone();
        expected.apply(logical)?;
        let mut actual = SparseState::from_entries(
            input
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(x, &a)| (place(x, initial), a)),
        );
        actual.apply(&routed)?;
        let overlap: Complex64 = expected
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(x, e)| e.conj() * actual.amplitude(place(x, final_layout)))
            .sum();
        worst = worst.min(overlap.norm_sqr());
    }
    Ok(worst)
}
