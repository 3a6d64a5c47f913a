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

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symbolic gate names understood by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    T,
    Tdg,
    SX,
    SXdg,
    /// `RZ(θ)`.
    RZ,
    /// General single-qubit rotation `U(θ, φ, λ)`.
    U,
    CX,
    CCX,
    /// Relative-phase Toffoli (three CX).
    RCCX,
    RCCXdg,
    Swap,
    /// Multi-controlled X with the given number of controls.
    Mcx(usize),
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::T
            | GateKind::Tdg
            | GateKind::SX
            | GateKind::SXdg
            | GateKind::RZ
            | GateKind::U => 1,
            GateKind::CX | GateKind::Swap => 2,
            GateKind::CCX | GateKind::RCCX | GateKind::RCCXdg => 3,
            GateKind::Mcx(k) => k + 1,
        }
    }

    pub fn num_params(self) -> usize {
        match self {
            GateKind::RZ => 1,
            GateKind::U => 3,
            _ => 0,
        }
    }

    pub fn name(self) -> String {
        match self {
            GateKind::X => "x".into(),
            GateKind::H => "h".into(),
            GateKind::T => "t".into(),
            GateKind::Tdg => "tdg".into(),
            GateKind::SX => "sx".into(),
            GateKind::SXdg => "sxdg".into(),
            GateKind::RZ => "rz".into(),
            GateKind::U => "u".into(),
            GateKind::CX => "cx".into(),
            GateKind::CCX => "ccx".into(),
            GateKind::RCCX => "rccx".into(),
            GateKind::RCCXdg => "rccxdg".into(),
            GateKind::Swap => "swap".into(),
            GateKind::Mcx(k) => format!("mcx{k}"),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A gate applied to an ordered list of register indices. Controls come
/// first and the target last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    kind: GateKind,
    params: Vec<f64>,
    qubits: Vec<usize>,
}

impl Gate {
    /// Builds a gate after checking arity, parameter count, angle finiteness
    /// and qubit distinctness.
    pub fn new(kind: GateKind, params: Vec<f64>, qubits: Vec<usize>) -> Result<Self> {
        if let GateKind::Mcx(0) = kind {
            return Err(Error::Arity {
                kind: kind.name(),
                expected: 2,
                got: qubits.len(),
            });
        }
        if qubits.len() != kind.arity() {
            return Err(Error::Arity {
                kind: kind.name(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if params.len() != kind.num_params() {
            return Err(Error::ParamCount {
                kind: kind.name(),
                expected: kind.num_params(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteAngle(kind.name()));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::RepeatedQubit(*q));
            }
        }
        Ok(Gate { kind, params, qubits })
    }

    // Unchecked constructors for the fixed builders below. Callers guarantee
    // distinct indices.
    fn fixed(kind: GateKind, qubits: Vec<usize>) -> Self {
        debug_assert_eq!(qubits.len(), kind.arity());
        Gate {
            kind,
            params: Vec::new(),
            qubits,
        }
    }

    pub fn x(q: usize) -> Self {
        Self::fixed(GateKind::X, vec![q])
    }
    pub fn h(q: usize) -> Self {
        Self::fixed(GateKind::H, vec![q])
    }
    pub fn t(q: usize) -> Self {
        Self::fixed(GateKind::T, vec![q])
    }
    pub fn tdg(q: usize) -> Self {
        Self::fixed(GateKind::Tdg, vec![q])
    }
    pub fn sx(q: usize) -> Self {
        Self::fixed(GateKind::SX, vec![q])
    }
    pub fn rz(theta: f64, q: usize) -> Self {
        Gate {
            kind: GateKind::RZ,
            params: vec![theta],
            qubits: vec![q],
        }
    }
    pub fn u(theta: f64, phi: f64, lambda: f64, q: usize) -> Self {
        Gate {
            kind: GateKind::U,
            params: vec![theta, phi, lambda],
            qubits: vec![q],
        }
    }
    /// Phase gate `diag(1, e^{iλ})` expressed as `U(0, 0, λ)`.
    pub fn phase(lambda: f64, q: usize) -> Self {
        Self::u(0.0, 0.0, lambda, q)
    }
    pub fn cx(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "cx on a single qubit");
        Self::fixed(GateKind::CX, vec![control, target])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "swap on a single qubit");
        Self::fixed(GateKind::Swap, vec![a, b])
    }
    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Self::three(GateKind::CCX, c0, c1, target)
    }
    pub fn rccx(c0: usize, c1: usize, target: usize) -> Self {
        Self::three(GateKind::RCCX, c0, c1, target)
    }
    pub fn rccxdg(c0: usize, c1: usize, target: usize) -> Self {
        Self::three(GateKind::RCCXdg, c0, c1, target)
    }
    fn three(kind: GateKind, a: usize, b: usize, c: usize) -> Self {
        assert!(a != b && b != c && a != c, "{kind} with repeated qubit");
        Self::fixed(kind, vec![a, b, c])
    }

    /// Multi-controlled X. Falls back to `cx`/`ccx` for one or two controls.
    pub fn mcx(controls: &[usize], target: usize) -> Result<Self> {
        let kind = match controls.len() {
            1 => GateKind::CX,
            2 => GateKind::CCX,
            k => GateKind::Mcx(k),
        };
        let mut qubits = controls.to_vec();
        qubits.push(target);
        Gate::new(kind, Vec::new(), qubits)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }
    pub fn params(&self) -> &[f64] {
        &self.params
    }
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }
    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    /// Same gate acting on relabeled qubits.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            params: self.params.clone(),
            qubits: self.qubits.iter().map(|&q| map(q)).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Gate> {
        let q = self.qubits.clone();
        let (kind, params) = match self.kind {
            GateKind::T => (GateKind::Tdg, vec![]),
            GateKind::Tdg => (GateKind::T, vec![]),
            GateKind::SX => (GateKind::SXdg, vec![]),
            GateKind::SXdg => (GateKind::SX, vec![]),
            GateKind::RCCX => (GateKind::RCCXdg, vec![]),
            GateKind::RCCXdg => (GateKind::RCCX, vec![]),
            GateKind::RZ => (GateKind::RZ, vec![-self.params[0]]),
            GateKind::U => {
                let (theta, phi, lambda) = (self.params[0], self.params[1], self.params[2]);
                (GateKind::U, vec![-theta, -lambda, -phi])
            }
            GateKind::X | GateKind::H | GateKind::CX | GateKind::CCX | GateKind::Swap | GateKind::Mcx(_) => {
                (self.kind, vec![])
            }
        };
        Ok(Gate {
            kind,
            params,
            qubits: q,
        })
    }

    /// True for gates in the `{U, CX}` basis.
    pub fn is_basis(&self) -> bool {
        matches!(self.kind, GateKind::U | GateKind::CX)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| format_angle(*p)).collect();
            write!(f, "({})", ps.join(","))?;
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| format!("q[{q}]")).collect();
        write!(f, " {}", qs.join(","))
    }
}

/// Formats an angle with enough digits to round-trip through `f64`.
pub(crate) fn format_angle(a: f64) -> String {
    if a == 0.0 {
        return "0".into();
    }
    for (num, den) in [(1.0, 1.0), (1.0, 2.0), (1.0, 4.0), (3.0, 4.0)] {
        for sign in [1.0, -1.0] {
            if a == sign * num * PI / den {
                let s = if sign < 0.0 { "-" } else { "" };
                let n = if num == 1.0 {
                    String::new()
                } else {
                    format!("{num}*")
                };
                return if den == 1.0 {
                    format!("{s}{n}pi")
                } else {
                    format!("{s}{n}pi/{den}")
                };
            }
        }
    }
    let mut s = format!("{a:?}");
    // QASM real literals need a decimal point.
    if !s.contains('.') {
        match s.find('e') {
            Some(i) => s.insert_str(i, ".0"),
            None => s.push_str(".0"),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeated_and_arity() {
        assert!(matches!(
            Gate::new(GateKind::CCX, vec![], vec![0, 0, 1]),
            Err(Error::RepeatedQubit(0))
        ));
        assert!(matches!(
            Gate::new(GateKind::CX, vec![], vec![0]),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::U, vec![0.1, f64::NAN, 0.0], vec![0]),
            Err(Error::NonFiniteAngle(_))
        ));
        assert!(Gate::new(GateKind::RZ, vec![], vec![0]).is_err());
    }

    #[test]
    fn u_inverse_swaps_phi_lambda() {
        let g = Gate::u(0.3, 0.5, 0.7, 2).inverse().unwrap();
        assert_eq!(g.params(), &[-0.3, -0.7, -0.5]);
    }

    #[test]
    fn mcx_shorthands() {
        assert_eq!(Gate::mcx(&[0], 1).unwrap().kind(), GateKind::CX);
        assert_eq!(Gate::mcx(&[0, 1], 2).unwrap().kind(), GateKind::CCX);
        assert_eq!(Gate::mcx(&[0, 1, 2], 3).unwrap().kind(), GateKind::Mcx(3));
        assert!(Gate::mcx(&[0, 1], 1).is_err());
    }

    #[test]
    fn angle_formatting() {
        assert_eq!(format_angle(PI), "pi");
        assert_eq!(format_angle(-PI / 4.0), "-pi/4");
        assert_eq!(format_angle(0.0), "0");
        assert_eq!(format_angle(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(format_angle(1e-5), "1.0e-5");
    }
}
