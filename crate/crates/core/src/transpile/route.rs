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

//! Lookahead SWAP insertion.
//!
//! The router keeps the set of gates whose predecessors have all been
//! emitted. Ready gates that are already local are emitted; when only
//! non-local two-qubit gates remain, one SWAP is chosen among the edges
//! touching them by minimizing
//!
//! ```text
//! Σ_front dist + lookahead_weight · Σ_window dist
//! ```
//!
//! with ties going to the lexicographically smallest edge. If too many SWAPs
//! go by without progress, the oldest front gate is walked into place along a
//! shortest path.

use super::layout::Layout;
use super::TranspileOptions;
use crate::circuit::{Circuit, CircuitDag, Gate, GateKind, QubitRole};
use crate::error::{Error, Result};
use crate::library::swap_gates;
use crate::topology::CouplingGraph;

const DECAY_STEP: f64 = 0.001;

/// Routed circuit on the physical register.
#[derive(Debug, Clone, PartialEq)]
pub struct Routed {
    pub circuit: Circuit,
    pub final_layout: Layout,
    pub swaps: usize,
}

/// Inserts SWAPs (as three CX each) until every CX acts on an edge.
///
/// Ready gates that are already local go out first. Otherwise the SWAP on an
/// edge touching the front layer that minimizes the mean front distance plus
/// `lookahead_weight` times the mean distance over the next window of
/// two-qubit gates is applied; ties go to the smallest edge. If no gate has
/// gone out after `2 * diameter + 4` swaps, the oldest front gate is walked
/// into place along a shortest path.
pub fn route(
    circuit: &Circuit,
    graph: &CouplingGraph,
    layout: &Layout,
    options: &TranspileOptions,
) -> Result<Routed> {
    let n = graph.num_qubits();
    if layout.len() != n || circuit.num_qubits() > n {
        return Err(Error::RegisterMismatch(format!(
            "{}-qubit circuit, {}-entry layout, {n}-node graph",
            circuit.num_qubits(),
            layout.len()
        )));
    }
    if let Some(g) = circuit.gates().iter().find(|g| !g.is_basis()) {
        return Err(Error::NotBasis(g.kind().name()));
    }
    Router::new(circuit, graph, layout.clone(), options).run()
}

struct Router<'a> {
    gates: &'a [Gate],
    graph: &'a CouplingGraph,
    layout: Layout,
    weight: f64,
    window: usize,
    pending: Vec<usize>,
    successors: Vec<Vec<usize>>,
    done: Vec<bool>,
    ready: Vec<usize>,
    cursor: usize,
    out: Vec<Gate>,
    swaps: usize,
    decay: Vec<f64>,
}

impl<'a> Router<'a> {
    fn new(
        circuit: &'a Circuit,
        graph: &'a CouplingGraph,
        layout: Layout,
        options: &TranspileOptions,
    ) -> Self {
        let dag = CircuitDag::new(circuit);
        let len = circuit.len();
        let mut successors = vec![Vec::new(); len];
        let mut pending = vec![0; len];
        for (i, slot) in pending.iter_mut().enumerate() {
            let preds = dag.predecessors(i);
            *slot = preds.len();
            for &p in preds {
                successors[p].push(i);
            }
        }
        let ready = (0..len).filter(|&i| pending[i] == 0).collect();
        Router {
            gates: circuit.gates(),
            graph,
            layout,
            weight: options.lookahead_weight,
            window: options.lookahead_window,
            pending,
            successors,
            done: vec![false; len],
            ready,
            cursor: 0,
            out: Vec::with_capacity(len * 2),
            swaps: 0,
            decay: vec![1.0; graph.num_qubits()],
        }
    }

    fn run(mut self) -> Result<Routed> {
        let stall_limit = 2 * self.graph.diameter() as usize + 4;
        let mut stalled = 0;
        let mut last_swap: Option<(usize, usize)> = None;
        loop {
            if self.emit_local() {
                self.decay.iter_mut().for_each(|d| *d = 1.0);
                stalled = 0;
                last_swap = None;
            }
            if self.ready.is_empty() {
                break;
            }
            if stalled >= stall_limit {
                self.force_oldest();
                stalled = 0;
                last_swap = None;
                continue;
            }
            let (a, b) = self.best_swap(last_swap);
            self.apply_swap(a, b);
            last_swap = Some((a, b));
            stalled += 1;
        }
        let n = self.graph.num_qubits();
        Ok(Routed {
            circuit: Circuit::from_parts_unchecked(n, vec![QubitRole::Plain; n], self.out),
            final_layout: self.layout,
            swaps: self.swaps,
        })
    }

    fn is_local(&self, g: &Gate) -> bool {
        match g.qubits() {
            [_] => true,
            [a, b] => self
                .graph
                .is_edge(self.layout.physical(*a), self.layout.physical(*b)),
            _ => unreachable!("basis gates have arity 1 or 2"),
        }
    }

    /// Emits every ready gate that is already local. Returns whether anything
    /// was emitted.
    fn emit_local(&mut self) -> bool {
        let mut progressed = false;
        loop {
            let mut emitted = false;
            let mut i = 0;
            while i < self.ready.len() {
                let gi = self.ready[i];
                if self.is_local(&self.gates[gi]) {
                    self.ready.swap_remove(i);
                    self.emit(gi);
                    emitted = true;
                } else {
                    i += 1;
                }
            }
            if !emitted {
                break;
            }
            progressed = true;
        }
        // Keep the front in program order so scoring and fallbacks are
        // independent of removal order.
        self.ready.sort_unstable();
        progressed
    }

    fn emit(&mut self, gi: usize) {
        let g = &self.gates[gi];
        self.out.push(g.remapped(|q| self.layout.physical(q)));
        self.done[gi] = true;
        for k in 0..self.successors[gi].len() {
            let s = self.successors[gi][k];
            self.pending[s] -= 1;
            if self.pending[s] == 0 {
                self.ready.push(s);
            }
        }
    }

    fn lookahead(&mut self) -> Vec<(usize, usize)> {
        while self.cursor < self.gates.len() && self.done[self.cursor] {
            self.cursor += 1;
        }
        let mut pairs = Vec::with_capacity(self.window);
        for gi in self.cursor..self.gates.len() {
            if pairs.len() >= self.window {
                break;
            }
            let g = &self.gates[gi];
            if self.done[gi] || g.arity() < 2 || self.ready.contains(&gi) {
                continue;
            }
            pairs.push((g.qubits()[0], g.qubits()[1]));
        }
        pairs
    }

    fn best_swap(&mut self, last: Option<(usize, usize)>) -> (usize, usize) {
        let front: Vec<(usize, usize)> = self
            .ready
            .iter()
            .map(|&gi| {
                let q = self.gates[gi].qubits();
                (q[0], q[1])
            })
            .collect();
        let ahead = self.lookahead();

        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in &front {
            for p in [self.layout.physical(a), self.layout.physical(b)] {
                for &q in self.graph.neighbors(p) {
                    candidates.push((p.min(q), p.max(q)));
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.len() > 1 {
            if let Some(l) = last {
                candidates.retain(|&e| e != l);
            }
        }

        let mut best = candidates[0];
        let mut best_score = f64::INFINITY;
        for &(p, q) in &candidates {
            let moved = |phys: usize| {
                if phys == p {
                    q
                } else if phys == q {
                    p
                } else {
                    phys
                }
            };
            let cost = |pairs: &[(usize, usize)]| -> f64 {
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let pa = moved(self.layout.physical(a));
                        let pb = moved(self.layout.physical(b));
                        f64::from(self.graph.dist(pa, pb))
                    })
                    .sum()
            };
            let mut score = cost(&front) / front.len() as f64;
            if !ahead.is_empty() {
                score += self.weight * cost(&ahead) / ahead.len() as f64;
            }
            // Qubits swapped since the last gate went out cost a little more,
            // which spreads swaps over the register.
            score *= self.decay[p].max(self.decay[q]);
            if score < best_score {
                best_score = score;
                best = (p, q);
            }
        }
        best
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        self.out.extend(swap_gates(a, b));
        self.decay[a] += DECAY_STEP;
        self.decay[b] += DECAY_STEP;
        self.layout.swap_physical(a, b);
        self.swaps += 1;
    }

    fn force_oldest(&mut self) {
        let gi = self.ready[0];
        let q = self.gates[gi].qubits();
        debug_assert_eq!(self.gates[gi].kind(), GateKind::CX);
        let (src, dst) = (self.layout.physical(q[0]), self.layout.physical(q[1]));
        let path = self.graph.shortest_path(src, dst);
        for w in path[..path.len() - 1].windows(2) {
            self.apply_swap(w[0], w[1]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> CouplingGraph {
        CouplingGraph::new("path", 3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn distance_two_needs_one_swap() {
        // Every placement of a CX across the path ends of a 3-node line.
        let g = path3();
        let c = Circuit::from_gates(3, [Gate::cx(0, 2)]).unwrap();
        for l2p in [[0, 1, 2], [2, 1, 0], [0, 2, 1], [1, 0, 2]] {
            let layout = Layout::from_logical_to_physical(l2p.to_vec()).unwrap();
            let r = route(&c, &g, &layout, &TranspileOptions::default()).unwrap();
            let d = g.dist(layout.physical(0), layout.physical(2));
            assert_eq!(r.swaps, (d - 1) as usize);
            assert!(r
                .circuit
                .gates()
                .iter()
                .all(|g| g.arity() == 1 || path3().is_edge(g.qubits()[0], g.qubits()[1])));
        }
    }

    #[test]
    fn complete_graph_needs_nothing() {
        let g = CouplingGraph::fully_connected(4).unwrap();
        let c = Circuit::from_gates(4, [Gate::cx(0, 3), Gate::u(0.1, 0.2, 0.3, 1), Gate::cx(2, 1)]).unwrap();
        let r = route(&c, &g, &Layout::identity(4), &TranspileOptions::default()).unwrap();
        assert_eq!(r.swaps, 0);
        assert_eq!(r.circuit.gates(), c.gates());
    }

    #[test]
    fn rejects_non_basis() {
        let c = Circuit::from_gates(3, [Gate::h(0)]).unwrap();
        assert!(matches!(
            route(&c, &path3(), &Layout::identity(3), &TranspileOptions::default()),
            Err(Error::NotBasis(_))
        ));
    }
}
