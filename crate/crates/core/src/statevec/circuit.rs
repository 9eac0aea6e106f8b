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

use super::{Gate, StateVector};
use crate::error::Result;
use crate::scalar::Real;

/// An initial state followed by an ordered gate list.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T: Real> {
    pub initial: StateVector<T>,
    pub gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    /// Starts from `|0…0⟩`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        Ok(Self {
            initial: StateVector::zero(n_qubits)?,
            gates: Vec::new(),
        })
    }

    pub fn from_state(initial: StateVector<T>) -> Self {
        Self {
            initial,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.initial.n_qubits()
    }

    pub fn push(&mut self, gate: Gate<T>) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate<T>>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.gates
            .iter()
            .try_for_each(|g| g.validate(self.n_qubits()))
    }

    /// Ideal (noiseless) final state.
    pub fn run(&self) -> Result<StateVector<T>> {
        let mut s = self.initial.clone();
        s.apply_all(&self.gates)?;
        Ok(s)
    }
}
