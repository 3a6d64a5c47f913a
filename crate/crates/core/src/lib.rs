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

//! Multi-controlled X (MCX) decompositions that trade ancilla qubits for
//! depth, a topology-aware transpiler to measure them on device graphs, and
//! a statevector checker that keeps every construction honest.
//!
//! The typical flow is [`realize`] → [`transpile`](transpile::transpile) →
//! [`check_mcx`]/[`run_experiment`].

pub mod circuit;
pub mod error;
pub mod experiment;
pub mod library;
pub mod mcx;
pub mod sim;
pub mod topology;
pub mod transpile;

pub use circuit::{to_qasm, Circuit, Gate, GateKind, QubitRole};
pub use error::{Error, Result};
pub use experiment::{
    depth_gain, emit_table, run_experiment, run_experiment_with, Cell, CellStatus, DepthTable,
    ExperimentConfig, GainSeries, TableFormat,
};
pub use library::{gate_unitary, lower_ccx, lower_rccx, lower_swap, Unitary};
pub use mcx::{
    ancilla_requirement, build_mcx_no_ancilla, build_mcx_recursion, build_mcx_vchain, realize, McxMethod,
    McxSpec,
};
pub use sim::{check_mcx, routed_fidelity, AncillaMode, EquivalenceReport, StateVector};
pub use topology::{CouplingGraph, TopologySpec};
pub use transpile::{
    initial_layout, lower_to_basis, peephole, route, transpile, transpile_spec, Layout, TranspileOptions,
    TranspiledResult,
};
