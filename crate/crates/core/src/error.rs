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

use thiserror::Error;

use crate::mcx::McxMethod;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {0} appears more than once in a single gate")]
    RepeatedQubit(usize),
    #[error("gate {kind} expects {expected} qubits, got {got}")]
    Arity {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("gate {kind} expects {expected} parameters, got {got}")]
    ParamCount {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("non-finite angle in gate {0}")]
    NonFiniteAngle(String),
    #[error("gate {0} has no inverse")]
    NoInverse(String),
    #[error("qubit map is not injective: {0} is targeted twice")]
    NonInjectiveMap(usize),
    #[error("qubit map has {got} entries, expected {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("unitary for {0} is too large to materialize")]
    OversizedUnitary(String),
    #[error("{method} is not applicable with {controls} control qubits")]
    NotApplicable { method: McxMethod, controls: usize },
    #[error("gate {0} is not in the basis set {{u, cx}}")]
    NotBasis(String),
    #[error("gate {0} cannot be exported to OpenQASM 2.0")]
    NotExportable(String),
    #[error("invalid topology: {0}")]
    Topology(String),
    #[error("coupling graph has {graph} qubits but the circuit needs {circuit}")]
    GraphTooSmall { graph: usize, circuit: usize },
    #[error("physical qubits {0} and {1} are not coupled")]
    NotCoupled(usize, usize),
    #[error("simulation of {0} qubits exceeds the statevector cap")]
    SimulationCap(usize),
    #[error("register mismatch: {0}")]
    RegisterMismatch(String),
    #[error("unknown {what}: {value}")]
    Unknown { what: &'static str, value: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
