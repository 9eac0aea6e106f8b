// Copyright 2026 The hyperteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Bob's correction tables, stored exactly as the protocol publishes them.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Protocol;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevec::Gate;

/// Pauli correction on one of Bob's qubits. `ZX` means X first, then Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliCorrection {
    I,
    X,
    Z,
    ZX,
}

impl PauliCorrection {
    /// Gates in application order.
    pub fn gates<T: Real>(self, qubit: usize) -> Vec<Gate<T>> {
        match self {
            PauliCorrection::I => vec![],
            PauliCorrection::X => vec![Gate::X(qubit)],
            PauliCorrection::Z => vec![Gate::Z(qubit)],
            PauliCorrection::ZX => vec![Gate::X(qubit), Gate::Z(qubit)],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PauliCorrection::I => "I",
            PauliCorrection::X => "X",
            PauliCorrection::Z => "Z",
            PauliCorrection::ZX => "ZX",
        }
    }
}

/// One correction per Bob qubit, in Bob's qubit order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorrectionRule(pub Vec<PauliCorrection>);

impl CorrectionRule {
    pub fn per_qubit(&self) -> &[PauliCorrection] {
        &self.0
    }

    /// Gates acting on Bob's register, whose qubit `i` is `bob_qubits[i]`.
    pub fn gates<T: Real>(&self, bob_qubits: &[usize]) -> Vec<Gate<T>> {
        self.0
            .iter()
            .zip(bob_qubits)
            .flat_map(|(c, &q)| c.gates(q))
            .collect()
    }
}

impl fmt::Display for CorrectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [single] => f.write_str(single.label()),
            many => {
                let parts: Vec<String> = many
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{}_b{}", c.label(), i + 1))
                    .collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

use PauliCorrection::{I, X, Z, ZX};

/// Alice's bits `(a, a₁, a₂)` to Bob's correction for the single-qubit protocol.
pub const SINGLE_QUBIT_TABLE: [(&str, PauliCorrection); 4] =
    [("000", I), ("100", Z), ("010", X), ("110", ZX)];

/// Alice's bits `(m₁, m₂, m₃, m₄)` to the corrections on `(b₁, b₂)`.
pub const TWO_QUBIT_TABLE: [(&str, PauliCorrection, PauliCorrection); 16] = [
    ("0000", I, I),
    ("0001", I, X),
    ("0010", X, I),
    ("0011", X, X),
    ("0100", I, Z),
    ("0101", I, ZX),
    ("0110", X, Z),
    ("0111", X, ZX),
    ("1000", Z, I),
    ("1001", Z, X),
    ("1010", ZX, I),
    ("1011", ZX, X),
    ("1100", Z, Z),
    ("1101", Z, ZX),
    ("1110", ZX, Z),
    ("1111", ZX, ZX),
];

/// Table lookup of Bob's correction for Alice's outcome.
pub fn correction_lookup(protocol: Protocol, alice_bits: &str) -> Result<CorrectionRule> {
    let found = match protocol {
        Protocol::Single => SINGLE_QUBIT_TABLE
            .iter()
            .find(|(bits, _)| *bits == alice_bits)
            .map(|&(_, c)| CorrectionRule(vec![c])),
        Protocol::Two => TWO_QUBIT_TABLE
            .iter()
            .find(|(bits, _, _)| *bits == alice_bits)
            .map(|&(_, c1, c2)| CorrectionRule(vec![c1, c2])),
    };
    found.ok_or_else(|| Error::Lookup(alice_bits.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_table_rows() {
        assert_eq!(
            correction_lookup(Protocol::Single, "110").unwrap(),
            CorrectionRule(vec![ZX])
        );
        assert_eq!(
            correction_lookup(Protocol::Single, "000").unwrap(),
            CorrectionRule(vec![I])
        );
        assert!(matches!(
            correction_lookup(Protocol::Single, "001"),
            Err(Error::Lookup(_))
        ));
        assert!(correction_lookup(Protocol::Single, "0000").is_err());
    }

    #[test]
    fn two_table_rows() {
        assert_eq!(
            correction_lookup(Protocol::Two, "1111").unwrap(),
            CorrectionRule(vec![ZX, ZX])
        );
        assert_eq!(
            correction_lookup(Protocol::Two, "0101").unwrap(),
            CorrectionRule(vec![I, ZX])
        );
        assert_eq!(
            correction_lookup(Protocol::Two, "1011").unwrap(),
            CorrectionRule(vec![ZX, X])
        );
        assert!(correction_lookup(Protocol::Two, "10x1").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CorrectionRule(vec![ZX]).to_string(), "ZX");
        assert_eq!(CorrectionRule(vec![I, ZX]).to_string(), "I_b1 ZX_b2");
    }
}
