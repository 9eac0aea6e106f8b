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

//! Hypergraphs, the `C^kZ` product construction of hypergraph states, and the two
//! reduced teleportation channels built from three- and four-qubit hypergraph states.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevec::{Control, Gate, StateVector, MAX_QUBITS};

/// Vertex count plus a set of hyperedges. Each hyperedge is stored sorted and
/// without repeated vertices; duplicate hyperedges collapse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphSpec", into = "HypergraphSpec")]
pub struct Hypergraph {
    n_vertices: usize,
    hyperedges: BTreeSet<Vec<usize>>,
}

/// Wire form: `{"n": 4, "edges": [[0,1,2],[1,2,3]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphSpec {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphSpec> for Hypergraph {
    type Error = Error;

    fn try_from(spec: HypergraphSpec) -> Result<Self> {
        Hypergraph::new(spec.n, spec.edges)
    }
}

impl From<Hypergraph> for HypergraphSpec {
    fn from(h: Hypergraph) -> Self {
        HypergraphSpec {
            n: h.n_vertices,
            edges: h.hyperedges.into_iter().collect(),
        }
    }
}

impl Hypergraph {
    pub fn new<E, I>(n_vertices: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n_vertices == 0 {
            return Err(Error::Model("hypergraph needs at least one vertex".into()));
        }
        let mut hyperedges = BTreeSet::new();
        for edge in edges {
            let set: BTreeSet<usize> = edge.into_iter().collect();
            if set.is_empty() {
                return Err(Error::Model("empty hyperedge".into()));
            }
            if let Some(&v) = set.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::Model(format!(
                    "vertex {v} out of range for {n_vertices} vertices"
                )));
            }
            hyperedges.insert(set.into_iter().collect());
        }
        Ok(Self {
            n_vertices,
            hyperedges,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn hyperedges(&self) -> impl Iterator<Item = &[usize]> {
        self.hyperedges.iter().map(Vec::as_slice)
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        self.hyperedges.iter().all(|e| e.len() == k)
    }

    /// Three vertices joined by one 3-hyperedge.
    pub fn three_uniform_3q() -> Self {
        Self::new(3, [[0, 1, 2]]).expect("static hypergraph")
    }

    /// Four vertices with hyperedges {0,1,2} and {1,2,3}.
    pub fn three_uniform_4q() -> Self {
        Self::new(4, [[0, 1, 2], [1, 2, 3]]).expect("static hypergraph")
    }

    /// One `C^{|e|}Z` gate per hyperedge.
    pub fn gates<T: Real>(&self) -> Vec<Gate<T>> {
        self.hyperedges
            .iter()
            .map(|e| Gate::multi_z(e).expect("hyperedges are non-empty"))
            .collect()
    }
}

/// `∏_{e∈E} C^{|e|}Z_e |+⟩^⊗n`
pub fn build_hypergraph_state<T: Real>(h: &Hypergraph) -> Result<StateVector<T>> {
    if h.n_vertices > MAX_QUBITS {
        return Err(Error::Size(format!(
            "{} vertices exceed the {MAX_QUBITS}-qubit cap",
            h.n_vertices
        )));
    }
    let mut state = StateVector::plus(h.n_vertices)?;
    state.apply_all(&h.gates())?;
    Ok(state)
}

/// Sign of basis state `basis_index` in the hypergraph state, by counting the
/// hyperedges whose vertices are all 1. Independent of the gate kernels.
pub fn sign_oracle(h: &Hypergraph, basis_index: usize) -> i8 {
    let n = h.n_vertices;
    let set = |v: usize| basis_index >> (n - 1 - v) & 1 == 1;
    let contained = h
        .hyperedges
        .iter()
        .filter(|e| e.iter().all(|&v| set(v)))
        .count();
    if contained % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A shared entangled resource with an explicit Alice/Bob split.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState<T: Real> {
    pub state: StateVector<T>,
    pub alice_qubits: Vec<usize>,
    pub bob_qubits: Vec<usize>,
}

impl<T: Real> ChannelState<T> {
    fn new(
        state: StateVector<T>,
        alice_qubits: Vec<usize>,
        bob_qubits: Vec<usize>,
    ) -> Result<Self> {
        let mut all: Vec<usize> = alice_qubits.iter().chain(&bob_qubits).copied().collect();
        all.sort_unstable();
        if all != (0..state.n_qubits()).collect::<Vec<_>>() {
            return Err(Error::Invariant(
                "Alice and Bob qubits must partition the register".into(),
            ));
        }
        state.check_norm()?;
        Ok(Self {
            state,
            alice_qubits,
            bob_qubits,
        })
    }
}

/// Gates that turn `|000⟩` into the three-qubit channel `½(|000⟩+|010⟩+|101⟩+|111⟩)`,
/// with the register placed at `offset`.
///
/// H on all three qubits, then CCZ with closed controls on qubits 0 and 1, then CCZ
/// with a closed control on 0 and an open control on 1, then H on qubit 2.
pub fn channel_3q_gates<T: Real>(offset: usize) -> Vec<Gate<T>> {
    let q = |i: usize| offset + i;
    let mut gates: Vec<Gate<T>> = (0..3).map(|i| Gate::H(q(i))).collect();
    gates.push(Gate::ccz(q(0), q(1), q(2)));
    gates.push(Gate::Controlled {
        controls: vec![Control::closed(q(0)), Control::open(q(1))],
        base: crate::statevec::Base::Z,
        target: q(2),
    });
    gates.push(Gate::H(q(2)));
    gates
}

/// Gates that build the four-qubit hypergraph state with hyperedges {0,1,2}, {1,2,3}.
pub fn hypergraph_4q_gates<T: Real>(offset: usize) -> Vec<Gate<T>> {
    let q = |i: usize| offset + i;
    let mut gates: Vec<Gate<T>> = (0..4).map(|i| Gate::H(q(i))).collect();
    gates.push(Gate::ccz(q(0), q(1), q(2)));
    gates.push(Gate::ccz(q(1), q(2), q(3)));
    gates
}

/// Gates that turn `|0000⟩` into `½(|0000⟩+|0101⟩+|1010⟩+|1111⟩)`: the
/// hypergraph state, then H on qubits 0 and 3, CNOT(1→3), CNOT(2→0),
/// CCNOT(1,2→3), CCNOT(1,2→0).
pub fn channel_4q_gates<T: Real>(offset: usize) -> Vec<Gate<T>> {
    let q = |i: usize| offset + i;
    let mut gates = hypergraph_4q_gates(offset);
    gates.extend([
        Gate::H(q(0)),
        Gate::H(q(3)),
        Gate::cnot(q(1), q(3)),
        Gate::cnot(q(2), q(0)),
        Gate::ccnot(q(1), q(2), q(3)),
        Gate::ccnot(q(1), q(2), q(0)),
    ]);
    gates
}

/// Three-qubit channel: qubits 0, 1 belong to Alice, qubit 2 to Bob.
pub fn build_channel_3q<T: Real>() -> Result<ChannelState<T>> {
    let mut state = StateVector::zero(3)?;
    state.apply_all(&channel_3q_gates(0))?;
    ChannelState::new(state, vec![0, 1], vec![2])
}

/// Four-qubit channel: qubits 0, 1 belong to Alice, qubits 2, 3 to Bob.
pub fn build_channel_4q<T: Real>() -> Result<ChannelState<T>> {
    let mut state = StateVector::zero(4)?;
    state.apply_all(&channel_4q_gates(0))?;
    ChannelState::new(state, vec![0, 1], vec![2, 3])
}
