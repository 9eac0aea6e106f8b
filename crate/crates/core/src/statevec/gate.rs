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

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Whether a control conditions on `|1⟩` (closed dot) or `|0⟩` (open dot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn closed(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Closed,
        }
    }

    pub fn open(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Open,
        }
    }
}

/// Operator applied to the target of a [`Gate::Controlled`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    X,
    Z,
}

/// A gate acting on named qubits. Qubit 0 is the leftmost symbol of a ket.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T: Real> {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// Phase gate diag(1, i).
    S(usize),
    /// Adjoint phase gate diag(1, -i).
    Sdg(usize),
    /// `[[cos θ/2, -e^{iλ} sin θ/2], [e^{iφ} sin θ/2, e^{i(φ+λ)} cos θ/2]]`
    U3 {
        target: usize,
        theta: T,
        phi: T,
        lambda: T,
    },
    /// Multi-controlled X or Z with any mix of closed and open controls. An empty
    /// control list is the bare base operator.
    Controlled {
        controls: Vec<Control>,
        base: Base,
        target: usize,
    },
}

impl<T: Real> Gate<T> {
    pub fn u3(target: usize, theta: T, phi: T, lambda: T) -> Self {
        Gate::U3 {
            target,
            theta,
            phi,
            lambda,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Controlled {
            controls: vec![Control::closed(control)],
            base: Base::X,
            target,
        }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Gate::Controlled {
            controls: vec![Control::closed(control)],
            base: Base::Z,
            target,
        }
    }

    pub fn ccnot(c0: usize, c1: usize, target: usize) -> Self {
        Gate::Controlled {
            controls: vec![Control::closed(c0), Control::closed(c1)],
            base: Base::X,
            target,
        }
    }

    pub fn ccz(c0: usize, c1: usize, target: usize) -> Self {
        Gate::Controlled {
            controls: vec![Control::closed(c0), Control::closed(c1)],
            base: Base::Z,
            target,
        }
    }

    /// `C^kZ` on the listed qubits: flips the sign of every basis state in which all of
    /// them are 1. Symmetric in its arguments; the last qubit is used as target.
    pub fn multi_z(qubits: &[usize]) -> Result<Self> {
        let (&target, rest) = qubits
            .split_last()
            .ok_or_else(|| Error::Gate("multi-controlled Z needs at least one qubit".into()))?;
        Ok(Gate::Controlled {
            controls: rest.iter().map(|&q| Control::closed(q)).collect(),
            base: Base::Z,
            target,
        })
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::S(q) | Gate::Sdg(q) => {
                vec![*q]
            }
            Gate::U3 { target, .. } => vec![*target],
            Gate::Controlled {
                controls, target, ..
            } => controls
                .iter()
                .map(|c| c.qubit)
                .chain(std::iter::once(*target))
                .collect(),
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Gate(format!(
                    "qubit {q} out of range for {n_qubits}-qubit state"
                )));
            }
            if qubits[..i].contains(&q) {
                return Err(Error::Gate(format!("qubit {q} used twice in one gate")));
            }
        }
        Ok(())
    }

    /// Row-major 2x2 matrix of an uncontrolled single-qubit gate. For
    /// [`Gate::Controlled`] this is the base operator.
    pub fn base_matrix(&self) -> [Complex<T>; 4] {
        let z = T::zero();
        let o = T::one();
        let c = |re: T, im: T| Complex::new(re, im);
        match self {
            Gate::H(_) => {
                let h = T::FRAC_1_SQRT_2();
                [c(h, z), c(h, z), c(h, z), c(-h, z)]
            }
            Gate::X(_) | Gate::Controlled { base: Base::X, .. } => {
                [c(z, z), c(o, z), c(o, z), c(z, z)]
            }
            Gate::Y(_) => [c(z, z), c(z, -o), c(z, o), c(z, z)],
            Gate::Z(_) | Gate::Controlled { base: Base::Z, .. } => {
                [c(o, z), c(z, z), c(z, z), c(-o, z)]
            }
            Gate::S(_) => [c(o, z), c(z, z), c(z, z), c(z, o)],
            Gate::Sdg(_) => [c(o, z), c(z, z), c(z, z), c(z, -o)],
            Gate::U3 {
                theta, phi, lambda, ..
            } => {
                let half = *theta / T::lit(2.0);
                let (s, co) = (half.sin(), half.cos());
                [
                    c(co, z),
                    -Complex::from_polar(s, *lambda),
                    Complex::from_polar(s, *phi),
                    Complex::from_polar(co, *phi + *lambda),
                ]
            }
        }
    }

    /// Applies the gate in place. `amps` must hold `2^n_qubits` entries and the gate
    /// must already be validated for `n_qubits`.
    pub(crate) fn apply_unchecked(&self, amps: &mut [Complex<T>], n_qubits: usize) {
        let bit = |q: usize| 1usize << (n_qubits - 1 - q);
        match self {
            Gate::X(q) => apply_controlled_x(amps, 0, 0, bit(*q)),
            Gate::Z(q) => apply_controlled_z(amps, 0, 0, bit(*q)),
            Gate::Controlled {
                controls,
                base,
                target,
            } => {
                let mut mask = 0;
                let mut value = 0;
                for c in controls {
                    mask |= bit(c.qubit);
                    if c.polarity == Polarity::Closed {
                        value |= bit(c.qubit);
                    }
                }
                match base {
                    Base::X => apply_controlled_x(amps, mask, value, bit(*target)),
                    Base::Z => apply_controlled_z(amps, mask, value, bit(*target)),
                }
            }
            Gate::H(q) | Gate::Y(q) | Gate::S(q) | Gate::Sdg(q) | Gate::U3 { target: q, .. } => {
                apply_single(amps, bit(*q), &self.base_matrix())
            }
        }
    }
}

fn apply_single<T: Real>(amps: &mut [Complex<T>], stride: usize, m: &[Complex<T>; 4]) {
    for block in (0..amps.len()).step_by(2 * stride) {
        for i in block..block + stride {
            let a0 = amps[i];
            let a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

fn apply_controlled_x<T: Real>(amps: &mut [Complex<T>], mask: usize, value: usize, target: usize) {
    for i in 0..amps.len() {
        if i & target == 0 && i & mask == value {
            amps.swap(i, i | target);
        }
    }
}

// Diagonal update: no amplitude moves, only signs flip.
fn apply_controlled_z<T: Real>(amps: &mut [Complex<T>], mask: usize, value: usize, target: usize) {
    for (i, a) in amps.iter_mut().enumerate() {
        if i & target != 0 && i & mask == value {
            *a = -*a;
        }
    }
}
