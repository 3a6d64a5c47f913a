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

//! Multi-controlled X realizations: the ancilla-free baseline, the
//! single-ancilla recursion and the clean/dirty v-chains.
//!
//! Every builder uses the same register layout: controls `0..C`, target `C`,
//! ancillas from `C + 1` on.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, QubitRole};
use crate::error::{Error, Result};
use crate::library::ccx_gates;

/// Atoms at or below this many controls are emitted as a plain MCX.
pub const RECURSION_ATOM_MAX_CONTROLS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McxMethod {
    NoAncilla,
    Recursion,
    #[serde(rename = "vchain")]
    VChain,
    #[serde(rename = "dirty-vchain")]
    DirtyVChain,
}

impl McxMethod {
    pub const ALL: [McxMethod; 4] = [
        McxMethod::VChain,
        McxMethod::DirtyVChain,
        McxMethod::Recursion,
        McxMethod::NoAncilla,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            McxMethod::NoAncilla => "no-ancilla",
            McxMethod::Recursion => "recursion",
            McxMethod::VChain => "vchain",
            McxMethod::DirtyVChain => "dirty-vchain",
        }
    }

    /// Whether the ancillas this method uses may start in any state.
    pub fn tolerates_dirty_ancillas(self) -> bool {
        matches!(self, McxMethod::Recursion | McxMethod::DirtyVChain)
    }

    pub fn min_controls(self) -> usize {
        match self {
            McxMethod::NoAncilla => 1,
            McxMethod::VChain | McxMethod::DirtyVChain => 3,
            McxMethod::Recursion => RECURSION_ATOM_MAX_CONTROLS + 1,
        }
    }
}

impl fmt::Display for McxMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for McxMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-ancilla" | "noancilla" => Ok(McxMethod::NoAncilla),
            "recursion" => Ok(McxMethod::Recursion),
            "vchain" | "v-chain" => Ok(McxMethod::VChain),
            "dirty-vchain" | "dirty-v-chain" => Ok(McxMethod::DirtyVChain),
            _ => Err(Error::Unknown {
                what: "method",
                value: s.to_string(),
            }),
        }
    }
}

/// Ancilla qubits a method needs for `controls` controls.
pub fn ancilla_requirement(method: McxMethod, controls: usize) -> usize {
    match method {
        McxMethod::NoAncilla => 0,
        McxMethod::Recursion => usize::from(controls > RECURSION_ATOM_MAX_CONTROLS),
        McxMethod::VChain | McxMethod::DirtyVChain => controls.saturating_sub(2),
    }
}

/// A validated `(controls, method)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct McxSpec {
    controls: usize,
    method: McxMethod,
}

impl McxSpec {
    pub fn new(method: McxMethod, controls: usize) -> Result<Self> {
        if controls < method.min_controls() {
            return Err(Error::NotApplicable { method, controls });
        }
        Ok(McxSpec { controls, method })
    }

    pub fn controls(&self) -> usize {
        self.controls
    }

    pub fn method(&self) -> McxMethod {
        self.method
    }

    pub fn ancillas(&self) -> usize {
        ancilla_requirement(self.method, self.controls)
    }

    /// Controls + target + ancillas.
    pub fn total_qubits(&self) -> usize {
        self.controls + 1 + self.ancillas()
    }
}

/// Builds the circuit for `spec` with qubit roles annotated.
pub fn realize(spec: &McxSpec) -> Result<Circuit> {
    match spec.method {
        McxMethod::NoAncilla => build_mcx_no_ancilla(spec.controls),
        McxMethod::Recursion => build_mcx_recursion(spec.controls),
        McxMethod::VChain => build_mcx_vchain(spec.controls, false),
        McxMethod::DirtyVChain => build_mcx_vchain(spec.controls, true),
    }
}

fn roles(controls: usize, ancillas: usize, dirty: bool) -> Vec<QubitRole> {
    let anc = if dirty {
        QubitRole::DirtyAncilla
    } else {
        QubitRole::CleanAncilla
    };
    let mut r = vec![QubitRole::Control; controls];
    r.push(QubitRole::Target);
    r.extend(std::iter::repeat_n(anc, ancillas));
    r
}

/// Ancilla-free MCX over `{CX, U}`: one CX for a single control, the 6-CX
/// Toffoli for two, and a Gray-code phase polynomial with `2^(C+1)` phase
/// terms beyond that.
pub fn build_mcx_no_ancilla(controls: usize) -> Result<Circuit> {
    if controls == 0 {
        return Err(Error::NotApplicable {
            method: McxMethod::NoAncilla,
            controls,
        });
    }
    let mut c = Circuit::with_roles(roles(controls, 0, false));
    let ctrl: Vec<usize> = (0..controls).collect();
    c.extend(no_ancilla_gates(&ctrl, controls))?;
    Ok(c)
}

/// Gate list of the ancilla-free MCX on arbitrary register indices.
pub(crate) fn no_ancilla_gates(controls: &[usize], target: usize) -> Vec<Gate> {
    match controls {
        [] => Vec::new(),
        [c] => vec![Gate::cx(*c, target)],
        [a, b] => ccx_gates(*a, *b, target),
        _ => {
            let mut gates = vec![Gate::h(target)];
            gates.extend(mcphase_gates(controls, target, PI));
            gates.push(Gate::h(target));
            gates
        }
    }
}

// Phase e^{iλ·x_0⋯x_{n-1}} via x_0⋯x_{n-1} = 2^{1-n} Σ_{S≠∅} (-1)^{|S|+1} ⊕_{i∈S} x_i.
// Subsets are grouped by their largest member, which accumulates the parity
// while a Gray code walks over the smaller members.
fn mcphase_gates(controls: &[usize], target: usize, lambda: f64) -> Vec<Gate> {
    let mut qs = controls.to_vec();
    qs.push(target);
    let n = qs.len();
    let scale = lambda / (1u64 << (n - 1)) as f64;
    let mut gates = Vec::with_capacity(1 << (n + 1));
    for (h, &acc) in qs.iter().enumerate() {
        let mut prev = 0usize;
        for k in 0..(1usize << h) {
            let code = k ^ (k >> 1);
            if k > 0 {
                let flipped = (code ^ prev).trailing_zeros() as usize;
                gates.push(Gate::cx(qs[flipped], acc));
            }
            prev = code;
            let size = code.count_ones() + 1;
            let sign = if size % 2 == 1 { 1.0 } else { -1.0 };
            gates.push(Gate::phase(sign * scale, acc));
        }
        if h > 0 {
            // The Gray code ends on the top bit alone.
            gates.push(Gate::cx(qs[h - 1], acc));
        }
    }
    gates
}

/// The four top-level blocks of the recursion split: `(controls, target)`
/// for first half, second half, first half, second half.
pub fn recursion_blocks(controls: &[usize], target: usize, ancilla: usize) -> [(Vec<usize>, usize); 4] {
    let middle = controls.len().div_ceil(2);
    let first = controls[..middle].to_vec();
    let mut second = controls[middle..].to_vec();
    second.push(ancilla);
    [
        (first.clone(), ancilla),
        (second.clone(), target),
        (first, ancilla),
        (second, target),
    ]
}

/// Single-ancilla recursive MCX. The ancilla may start in any state and is
/// restored. Sub-blocks above four controls recurse again, borrowing an idle
/// control of the opposite half as their ancilla.
pub fn build_mcx_recursion(controls: usize) -> Result<Circuit> {
    if controls <= RECURSION_ATOM_MAX_CONTROLS {
        return Err(Error::NotApplicable {
            method: McxMethod::Recursion,
            controls,
        });
    }
    let mut c = Circuit::with_roles(roles(controls, 1, true));
    let ctrl: Vec<usize> = (0..controls).collect();
    let mut gates = Vec::new();
    recursion_gates(&ctrl, controls, controls + 1, &mut gates)?;
    c.extend(gates)?;
    Ok(c)
}

fn recursion_gates(controls: &[usize], target: usize, ancilla: usize, out: &mut Vec<Gate>) -> Result<()> {
    if controls.len() <= RECURSION_ATOM_MAX_CONTROLS {
        out.push(Gate::mcx(controls, target)?);
        return Ok(());
    }
    let middle = controls.len().div_ceil(2);
    // First-half blocks borrow the first control of the second half and
    // vice versa.
    let borrow = [controls[middle], controls[middle - 1]];
    for (i, (ctrl, tgt)) in recursion_blocks(controls, target, ancilla).iter().enumerate() {
        recursion_gates(ctrl, *tgt, borrow[i % 2], out)?;
    }
    Ok(())
}

/// The `(c0, c1, target)` triples of the compute half of the clean v-chain:
/// `(q0, q1, a0)` then `(q_i, a_{i-2}, a_{i-1})` for `i = 2..=C-2`.
fn vchain_compute_stages(controls: &[usize], ancillas: &[usize]) -> Vec<[usize; 3]> {
    let c = controls.len();
    let mut stages = vec![[controls[0], controls[1], ancillas[0]]];
    for i in 2..c - 1 {
        stages.push([controls[i], ancillas[i - 2], ancillas[i - 1]]);
    }
    stages
}

/// V-chain MCX with `C - 2` ancillas.
///
/// Clean: relative-phase compute ladder, one full Toffoli onto the target,
/// then the inverse ladder (`2C - 3` stages).
///
/// Dirty: `T · L · T · L†`, where `T` is the Toffoli onto the target and `L`
/// is the palindromic relative-phase ladder down to `(q0, q1, a0)` and back.
/// Ancillas may start in any state and are restored.
pub fn build_mcx_vchain(controls: usize, dirty: bool) -> Result<Circuit> {
    let method = if dirty {
        McxMethod::DirtyVChain
    } else {
        McxMethod::VChain
    };
    if controls < 3 {
        return Err(Error::NotApplicable { method, controls });
    }
    let target = controls;
    let ctrl: Vec<usize> = (0..controls).collect();
    let anc: Vec<usize> = (controls + 1..2 * controls - 1).collect();
    let compute = vchain_compute_stages(&ctrl, &anc);
    let top = [ctrl[controls - 1], anc[controls - 3], target];

    let mut c = Circuit::with_roles(roles(controls, anc.len(), dirty));
    if !dirty {
        c.extend(compute.iter().map(|&[a, b, t]| Gate::rccx(a, b, t)))?;
        c.append(Gate::ccx(top[0], top[1], top[2]))?;
        c.extend(compute.iter().rev().map(|&[a, b, t]| Gate::rccxdg(a, b, t)))?;
    } else {
        let ladder: Vec<[usize; 3]> = compute
            .iter()
            .rev()
            .chain(compute.iter().skip(1))
            .copied()
            .collect();
        c.append(Gate::ccx(top[0], top[1], top[2]))?;
        c.extend(ladder.iter().map(|&[a, b, t]| Gate::rccx(a, b, t)))?;
        c.append(Gate::ccx(top[0], top[1], top[2]))?;
        c.extend(ladder.iter().rev().map(|&[a, b, t]| Gate::rccxdg(a, b, t)))?;
    }
    Ok(c)
}
