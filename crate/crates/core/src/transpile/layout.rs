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

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::topology::CouplingGraph;

/// Bijection between logical qubits and physical graph nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    logical_to_physical: Vec<usize>,
    physical_to_logical: Vec<usize>,
}

impl Layout {
    pub fn identity(n: usize) -> Self {
        Layout {
            logical_to_physical: (0..n).collect(),
            physical_to_logical: (0..n).collect(),
        }
    }

    pub fn from_logical_to_physical(l2p: Vec<usize>) -> Result<Self> {
        let mut p2l = vec![usize::MAX; l2p.len()];
        for (l, &p) in l2p.iter().enumerate() {
            if p >= l2p.len() || p2l[p] != usize::MAX {
                return Err(Error::RegisterMismatch(format!(
                    "layout {l2p:?} is not a permutation"
                )));
            }
            p2l[p] = l;
        }
        Ok(Layout {
            logical_to_physical: l2p,
            physical_to_logical: p2l,
        })
    }

    pub fn len(&self) -> usize {
        self.logical_to_physical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logical_to_physical.is_empty()
    }

    #[inline]
    pub fn physical(&self, logical: usize) -> usize {
        self.logical_to_physical[logical]
    }

    #[inline]
    pub fn logical(&self, physical: usize) -> usize {
        self.physical_to_logical[physical]
    }

    pub fn logical_to_physical(&self) -> &[usize] {
        &self.logical_to_physical
    }

    /// Exchanges the logical qubits held by two physical nodes.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.physical_to_logical[a], self.physical_to_logical[b]);
        self.physical_to_logical.swap(a, b);
        self.logical_to_physical[la] = b;
        self.logical_to_physical[lb] = a;
    }
}

/// Places logical qubits, busiest first (by two-qubit gate count), on a
/// breadth-first ordering of the graph rooted at its highest-degree node.
/// Complete graphs get the identity. A nonzero seed shuffles ties.
pub fn initial_layout(circuit: &Circuit, graph: &CouplingGraph, seed: u64) -> Result<Layout> {
    let n = graph.num_qubits();
    if n < circuit.num_qubits() {
        return Err(Error::GraphTooSmall {
            graph: n,
            circuit: circuit.num_qubits(),
        });
    }
    if graph.is_complete() {
        return Ok(Layout::identity(n));
    }
    let mut participation = vec![0usize; n];
    for g in circuit.gates().iter().filter(|g| g.arity() >= 2) {
        for &q in g.qubits() {
            participation[q] += 1;
        }
    }
    let mut logical: Vec<usize> = (0..n).collect();
    let max_degree = graph.max_degree();
    let mut hubs: Vec<usize> = (0..n).filter(|&p| graph.degree(p) == max_degree).collect();
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        logical.shuffle(&mut rng);
        hubs.shuffle(&mut rng);
    }
    // Stable sort keeps the index (or shuffled) order among ties.
    logical.sort_by_key(|&l| std::cmp::Reverse(participation[l]));
    let order = graph.bfs_order(hubs[0]);
    let mut l2p = vec![0; n];
    for (l, p) in logical.into_iter().zip(order) {
        l2p[l] = p;
    }
    Layout::from_logical_to_physical(l2p)
}
