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

//! Closed-form joint states at every stage of both protocols, written out ket by
//! ket. They are written by hand rather than simulated, and serve as the reference the
//! simulated [`super::ProtocolTrace`] is checked against.
//!
//! Register order is message qubit(s), then Alice's channel qubits, then Bob's.

use num_complex::Complex;

use super::{SingleQubitMessage, TwoQubitMessage};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevec::{parse_bit_string, StateVector};

type Term<'a, T> = (Complex<T>, &'a str);

fn from_terms<T: Real>(n: usize, terms: &[Term<'_, T>]) -> Result<StateVector<T>> {
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
    for (coef, ket) in terms {
        if ket.len() != n {
            return Err(Error::Invariant(format!(
                "ket {ket} is not {n} qubits long"
            )));
        }
        amps[parse_bit_string(ket)?] += *coef;
    }
    StateVector::from_amplitudes(amps)
}

fn r<T: Real>(x: f64) -> Complex<T> {
    Complex::new(T::lit(x), T::zero())
}

const THREE_CHANNEL: [&str; 4] = ["000", "010", "101", "111"];
const THREE_BETA_BLOCK: [&str; 4] = ["110", "100", "011", "001"];
const FOUR_CHANNEL: [&str; 4] = ["0000", "0101", "1010", "1111"];

/// `|χ₁⟩ … |χ₄⟩` on `a₁a₂b₁b₂`.
pub const CHI: [[&str; 4]; 4] = [
    ["0000", "0101", "1010", "1111"],
    ["0100", "0001", "1110", "1011"],
    ["1000", "1101", "0010", "0111"],
    ["1100", "1001", "0110", "0011"],
];

/// Bob's single-qubit branch states `|Ψ¹⟩ … |Ψ⁴⟩`, keyed by Alice's outcome.
pub const SINGLE_BRANCHES: [(&str, &str); 4] = [
    ("000", "+a0 +b1"),
    ("100", "+a0 -b1"),
    ("010", "+a1 +b0"),
    ("110", "+a1 -b0"),
];

/// Bob's two-qubit branch states `|Ψ¹⟩ … |Ψ¹⁶⟩`, keyed by Alice's outcome.
pub const TWO_BRANCHES: [(&str, &str); 16] = [
    ("0000", "+a00 +b01 +c10 +d11"),
    ("0001", "+a01 +b00 +c11 +d10"),
    ("0010", "+a10 +b11 +c00 +d01"),
    ("0011", "+a11 +b10 +c01 +d00"),
    ("0100", "+a00 -b01 +c10 -d11"),
    ("0101", "+a01 -b00 +c11 -d10"),
    ("0110", "+a10 -b11 +c00 -d01"),
    ("0111", "+a11 -b10 +c01 -d00"),
    ("1000", "+a00 +b01 -c10 -d11"),
    ("1001", "+a01 +b00 -c11 -d10"),
    ("1010", "+a10 +b11 -c00 -d01"),
    ("1011", "+a11 +b10 -c01 -d00"),
    ("1100", "+a00 -b01 -c10 +d11"),
    ("1101", "+a01 -b00 -c11 +d10"),
    ("1110", "+a10 -b11 -c00 +d01"),
    ("1111", "+a11 -b10 -c01 +d00"),
];

/// Expands a term list such as `"+a01 -b00"` into `(coefficient, ket)` pairs.
fn expand<'a, T: Real>(spec: &'a str, coefs: &[Complex<T>]) -> Vec<Term<'a, T>> {
    spec.split_whitespace()
        .map(|tok| {
            let sign = if tok.starts_with('-') {
                -T::one()
            } else {
                T::one()
            };
            let which = (tok.as_bytes()[1] - b'a') as usize;
            (coefs[which] * sign, &tok[2..])
        })
        .collect()
}

/// Bob's state for a branch of the single-qubit protocol, before correction.
pub fn single_branch_state<T: Real>(
    msg: &SingleQubitMessage<T>,
    alice_bits: &str,
) -> Result<StateVector<T>> {
    let (_, spec) = SINGLE_BRANCHES
        .iter()
        .find(|(bits, _)| *bits == alice_bits)
        .ok_or_else(|| Error::Lookup(alice_bits.to_string()))?;
    from_terms(1, &expand(spec, &[msg.alpha, msg.beta]))
}

/// Bob's state for a branch of the two-qubit protocol, before correction.
pub fn two_branch_state<T: Real>(
    msg: &TwoQubitMessage<T>,
    alice_bits: &str,
) -> Result<StateVector<T>> {
    let (_, spec) = TWO_BRANCHES
        .iter()
        .find(|(bits, _)| *bits == alice_bits)
        .ok_or_else(|| Error::Lookup(alice_bits.to_string()))?;
    from_terms(2, &expand(spec, &msg.coefficients()))
}

/// Message ⊗ three-qubit channel.
pub fn single_prepared<T: Real>(msg: &SingleQubitMessage<T>) -> Result<StateVector<T>> {
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for (bit, coef) in [("0", msg.alpha), ("1", msg.beta)] {
        for ket in THREE_CHANNEL {
            terms.push((coef * half, format!("{bit}{ket}")));
        }
    }
    from_owned(4, terms)
}

/// After CNOT(a→a₁) and CNOT(a→a₂).
pub fn single_after_cnots<T: Real>(msg: &SingleQubitMessage<T>) -> Result<StateVector<T>> {
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for ket in THREE_CHANNEL {
        terms.push((msg.alpha * half, format!("0{ket}")));
    }
    for ket in THREE_BETA_BLOCK {
        terms.push((msg.beta * half, format!("1{ket}")));
    }
    from_owned(4, terms)
}

/// After H on `a`.
pub fn single_after_h_a<T: Real>(msg: &SingleQubitMessage<T>) -> Result<StateVector<T>> {
    let k = r::<T>(1.0 / (2.0 * 2f64.sqrt()));
    let mut terms = Vec::new();
    for ket in THREE_CHANNEL {
        terms.push((msg.alpha * k, format!("0{ket}")));
        terms.push((msg.alpha * k, format!("1{ket}")));
    }
    for ket in THREE_BETA_BLOCK {
        terms.push((msg.beta * k, format!("0{ket}")));
        terms.push((-msg.beta * k, format!("1{ket}")));
    }
    from_owned(4, terms)
}

/// After H on `a₂`: `½ Σ |m⟩_{aa₁a₂} ⊗ |Ψ^m⟩_b`.
///
/// Each of the four branches carries amplitude ½ (probability ¼); this is the
/// normalised form of the expansion.
pub fn single_after_h_a2<T: Real>(msg: &SingleQubitMessage<T>) -> Result<StateVector<T>> {
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for (bits, spec) in SINGLE_BRANCHES {
        for (coef, bob) in expand(spec, &[msg.alpha, msg.beta]) {
            terms.push((coef * half, format!("{bits}{bob}")));
        }
    }
    from_owned(4, terms)
}

/// Message ⊗ four-qubit channel.
pub fn two_prepared<T: Real>(msg: &TwoQubitMessage<T>) -> Result<StateVector<T>> {
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for (m, coef) in ["00", "01", "10", "11"].into_iter().zip(msg.coefficients()) {
        for ket in FOUR_CHANNEL {
            terms.push((coef * half, format!("{m}{ket}")));
        }
    }
    from_owned(6, terms)
}

/// After CNOT(1→a₁) and CNOT(2→a₂): `½ Σ c_m |m⟩ ⊗ |χ_m⟩`.
pub fn two_after_cnots<T: Real>(msg: &TwoQubitMessage<T>) -> Result<StateVector<T>> {
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for ((m, coef), chi) in ["00", "01", "10", "11"]
        .into_iter()
        .zip(msg.coefficients())
        .zip(CHI)
    {
        for ket in chi {
            terms.push((coef * half, format!("{m}{ket}")));
        }
    }
    from_owned(6, terms)
}

/// After H on qubits 1 and 2, grouped by message coefficient.
pub fn two_after_hadamards_grouped<T: Real>(msg: &TwoQubitMessage<T>) -> Result<StateVector<T>> {
    // Sign of |xy⟩ in the Hadamard image of each message basis state.
    const SIGNS: [[f64; 4]; 4] = [
        [1., 1., 1., 1.],
        [1., -1., 1., -1.],
        [1., 1., -1., -1.],
        [1., -1., -1., 1.],
    ];
    let half = r::<T>(0.5);
    let mut terms = Vec::new();
    for ((coef, chi), signs) in msg.coefficients().into_iter().zip(CHI).zip(SIGNS) {
        for (xy, s) in ["00", "01", "10", "11"].into_iter().zip(signs) {
            for ket in chi {
                terms.push((coef * half * r::<T>(s * 0.5), format!("{xy}{ket}")));
            }
        }
    }
    from_owned(6, terms)
}

/// After H on qubits 1 and 2, grouped by Alice's outcome: `¼ Σ |m⟩ ⊗ |Ψ^m⟩`.
pub fn two_after_hadamards_by_outcome<T: Real>(msg: &TwoQubitMessage<T>) -> Result<StateVector<T>> {
    let quarter = r::<T>(0.25);
    let coefs = msg.coefficients();
    let mut terms = Vec::new();
    for (bits, spec) in TWO_BRANCHES {
        for (coef, bob) in expand(spec, &coefs) {
            terms.push((coef * quarter, format!("{bits}{bob}")));
        }
    }
    from_owned(6, terms)
}

fn from_owned<T: Real>(n: usize, terms: Vec<(Complex<T>, String)>) -> Result<StateVector<T>> {
    let borrowed: Vec<Term<'_, T>> = terms.iter().map(|(c, k)| (*c, k.as_str())).collect();
    from_terms(n, &borrowed)
}
