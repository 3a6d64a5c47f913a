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

//! Fixtures shared by the criterion benches.

use mcxdepth_core::{CouplingGraph, McxMethod, McxSpec, TopologySpec, TranspileOptions};

/// One routing workload: a decomposition placed on a device graph.
pub struct Workload {
    pub label: String,
    pub spec: McxSpec,
    pub graph: CouplingGraph,
}

/// Sparse-topology workloads at a fixed control count.
pub fn workloads(controls: usize) -> Vec<Workload> {
    let mut out = Vec::new();
    for topology in ["grid:6x6", "hex:3x3", "toronto"] {
        let topology: TopologySpec = topology.parse().expect("known topology");
        for method in McxMethod::ALL {
            let Ok(spec) = McxSpec::new(method, controls) else {
                continue;
            };
            let Ok(graph) = topology.build(spec.total_qubits()) else {
                continue;
            };
            out.push(Workload {
                label: format!("{}/{method}", topology.label()),
                spec,
                graph,
            });
        }
    }
    out
}

/// Routing options for benches: one layout, no refinement.
pub fn quick_options() -> TranspileOptions {
    TranspileOptions::single_pass(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_fit_their_graphs() {
        let w = workloads(6);
        assert_eq!(w.len(), 12);
        assert!(w.iter().all(|w| w.graph.num_qubits() >= w.spec.total_qubits()));
    }
}
