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

use super::circuit::Circuit;
use super::gate::Gate;

/// Qubit-sharing precedence graph: gate `j` depends on gate `i < j` when `i`
/// is the previous gate on one of `j`'s qubits.
#[derive(Debug, Clone)]
pub struct CircuitDag<'a> {
    circuit: &'a Circuit,
    preds: Vec<Vec<usize>>,
}

impl<'a> CircuitDag<'a> {
    pub fn new(circuit: &'a Circuit) -> Self {
        let mut last: Vec<Option<usize>> = vec![None; circuit.num_qubits()];
        let mut preds = Vec::with_capacity(circuit.len());
        for (i, g) in circuit.gates().iter().enumerate() {
            let mut p: Vec<usize> = g.qubits().iter().filter_map(|&q| last[q]).collect();
            p.sort_unstable();
            p.dedup();
            preds.push(p);
            for &q in g.qubits() {
                last[q] = Some(i);
            }
        }
        CircuitDag { circuit, preds }
    }

    pub fn predecessors(&self, gate: usize) -> &[usize] {
        &self.preds[gate]
    }

    /// Longest path counting only the nodes accepted by `counts`. Rejected
    /// gates still transmit precedence.
    pub fn longest_path(&self, counts: impl Fn(&Gate) -> bool) -> usize {
        // Gate order is already a topological order.
        let mut dist = vec![0usize; self.preds.len()];
        let mut best = 0;
        for (i, g) in self.circuit.gates().iter().enumerate() {
            let base = self.preds[i].iter().map(|&p| dist[p]).max().unwrap_or(0);
            dist[i] = base + usize::from(counts(g));
            best = best.max(dist[i]);
        }
        best
    }
}
