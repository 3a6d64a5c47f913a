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

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::dag::CircuitDag;
use super::gate::Gate;
use crate::error::{Error, Result};

/// What a register slot is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QubitRole {
    Control,
    Target,
    /// Guaranteed `|0⟩` on entry and returned to `|0⟩`.
    CleanAncilla,
    /// Arbitrary state on entry, restored on exit.
    DirtyAncilla,
    Plain,
}

impl QubitRole {
    pub fn is_ancilla(self) -> bool {
        matches!(self, QubitRole::CleanAncilla | QubitRole::DirtyAncilla)
    }
}

/// Ordered gate list over a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    roles: Vec<QubitRole>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            roles: vec![QubitRole::Plain; num_qubits],
            gates: Vec::new(),
        }
    }

    pub fn with_roles(roles: Vec<QubitRole>) -> Self {
        Circuit {
            num_qubits: roles.len(),
            roles,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.append(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn set_roles(&mut self, roles: Vec<QubitRole>) -> Result<()> {
        if roles.len() != self.num_qubits {
            return Err(Error::RegisterMismatch(format!(
                "{} roles for {} qubits",
                roles.len(),
                self.num_qubits
            )));
        }
        self.roles = roles;
        Ok(())
    }

    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<usize> {
        (0..self.num_qubits).filter(|&q| self.roles[q] == role).collect()
    }

    pub fn ancilla_count(&self) -> usize {
        self.roles.iter().filter(|r| r.is_ancilla()).count()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends `gate` at the end of the sequence.
    pub fn append(&mut self, gate: Gate) -> Result<()> {
        for (i, &q) in gate.qubits().iter().enumerate() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
            if gate.qubits()[..i].contains(&q) {
                return Err(Error::RepeatedQubit(q));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.append(g))
    }

    /// Length of the longest chain of gates linked by shared qubits.
    pub fn depth(&self) -> usize {
        CircuitDag::new(self).longest_path(|_| true)
    }

    /// Depth over gates acting on two or more qubits.
    pub fn two_qubit_depth(&self) -> usize {
        CircuitDag::new(self).longest_path(|g| g.arity() >= 2)
    }

    pub fn count_ops(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind().name()).or_insert(0) += 1;
        }
        counts
    }

    /// Reversed sequence of inverted gates.
    pub fn inverse(&self) -> Result<Circuit> {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(Gate::inverse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            num_qubits: self.num_qubits,
            roles: self.roles.clone(),
            gates,
        })
    }

    /// Appends `other`'s gates with qubit `i` of `other` relabeled to
    /// `qubit_map[i]`.
    pub fn compose(&mut self, other: &Circuit, qubit_map: &[usize]) -> Result<()> {
        if qubit_map.len() != other.num_qubits {
            return Err(Error::MapLength {
                expected: other.num_qubits,
                got: qubit_map.len(),
            });
        }
        for (i, &q) in qubit_map.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
            if qubit_map[..i].contains(&q) {
                return Err(Error::NonInjectiveMap(q));
            }
        }
        self.gates
            .extend(other.gates.iter().map(|g| g.remapped(|q| qubit_map[q])));
        Ok(())
    }

    /// Same gates on a register widened to `num_qubits` with plain idle qubits.
    pub fn padded(&self, num_qubits: usize) -> Circuit {
        assert!(num_qubits >= self.num_qubits);
        let mut roles = self.roles.clone();
        roles.resize(num_qubits, QubitRole::Plain);
        Circuit {
            num_qubits,
            roles,
            gates: self.gates.clone(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        num_qubits: usize,
        roles: Vec<QubitRole>,
        gates: Vec<Gate>,
    ) -> Circuit {
        Circuit {
            num_qubits,
            roles,
            gates,
        }
    }
}
