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

//! Teleportation of one and two qubits through hypergraph-derived channels.
//!
//! Single-qubit register: `a = 0`, `a₁ = 1`, `a₂ = 2`, `b = 3`.
//! Two-qubit register: `1 = 0`, `2 = 1`, `a₁ = 2`, `a₂ = 3`, `b₁ = 4`, `b₂ = 5`.

pub mod closed_form;
mod tables;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use tables::{
    correction_lookup, CorrectionRule, PauliCorrection, SINGLE_QUBIT_TABLE, TWO_QUBIT_TABLE,
};

use crate::error::{Error, Result};
use crate::hypergraph::{channel_3q_gates, channel_4q_gates};
use crate::noise::{noisy_run, NoiseModel};
use crate::rng::{stream, Purpose};
use crate::scalar::Real;
use crate::statevec::{
    bit_string, sample_shots, Circuit, Gate, Sampler, ShotHistogram, StateVector,
};
use crate::tomography::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Single,
    Two,
}

impl Protocol {
    pub fn n_qubits(self) -> usize {
        match self {
            Protocol::Single => 4,
            Protocol::Two => 6,
        }
    }

    pub fn message_qubits(self) -> Vec<usize> {
        match self {
            Protocol::Single => vec![0],
            Protocol::Two => vec![0, 1],
        }
    }

    /// Qubits Alice measures, in outcome-string order.
    pub fn alice_qubits(self) -> Vec<usize> {
        match self {
            Protocol::Single => vec![0, 1, 2],
            Protocol::Two => vec![0, 1, 2, 3],
        }
    }

    pub fn bob_qubits(self) -> Vec<usize> {
        match self {
            Protocol::Single => vec![3],
            Protocol::Two => vec![4, 5],
        }
    }

    /// Alice's entangling and basis-change gates.
    pub fn alice_gates<T: Real>(self) -> Vec<Gate<T>> {
        match self {
            Protocol::Single => vec![Gate::cnot(0, 1), Gate::cnot(0, 2), Gate::H(0), Gate::H(2)],
            Protocol::Two => vec![Gate::cnot(0, 2), Gate::cnot(1, 3), Gate::H(0), Gate::H(1)],
        }
    }

    /// Corrections as quantum-controlled gates, X before Z on each Bob qubit.
    pub fn deferred_corrections<T: Real>(self) -> Vec<Gate<T>> {
        match self {
            Protocol::Single => vec![Gate::cnot(1, 3), Gate::cz(0, 3)],
            Protocol::Two => vec![
                Gate::cnot(2, 4),
                Gate::cz(0, 4),
                Gate::cnot(3, 5),
                Gate::cz(1, 5),
            ],
        }
    }

    fn channel_gates<T: Real>(self) -> Vec<Gate<T>> {
        match self {
            Protocol::Single => channel_3q_gates(1),
            Protocol::Two => channel_4q_gates(2),
        }
    }
}

fn check_message_norm<T: Real>(coefs: &[Complex<T>]) -> Result<()> {
    let norm: T = coefs.iter().map(|c| c.norm_sqr()).sum();
    if (norm - T::one()).abs() > T::tol() {
        return Err(Error::Argument(format!(
            "message is not normalized: squared norm {norm}"
        )));
    }
    Ok(())
}

/// `α|0⟩ + β|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitMessage<T: Real> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
}

impl<T: Real> SingleQubitMessage<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        check_message_norm(&[alpha, beta])?;
        Ok(Self { alpha, beta })
    }

    /// `U3(θ, φ, λ)|0⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn from_u3(theta: T, phi: T) -> Self {
        let half = theta / T::lit(2.0);
        Self {
            alpha: Complex::new(half.cos(), T::zero()),
            beta: Complex::from_polar(half.sin(), phi),
        }
    }

    pub fn state(&self) -> StateVector<T> {
        StateVector::from_amplitudes(vec![self.alpha, self.beta])
            .expect("validated on construction")
    }
}

/// `α|00⟩ + β|01⟩ + γ|10⟩ + δ|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitMessage<T: Real> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
    pub delta: Complex<T>,
}

impl<T: Real> TwoQubitMessage<T> {
    pub fn new(
        alpha: Complex<T>,
        beta: Complex<T>,
        gamma: Complex<T>,
        delta: Complex<T>,
    ) -> Result<Self> {
        check_message_norm(&[alpha, beta, gamma, delta])?;
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// Product state `U3(θ₁, φ₁, 0)|0⟩ ⊗ U3(θ₂, φ₂, 0)|0⟩`. Entangled messages need [`Self::new`].
    pub fn from_u3_pair(first: (T, T), second: (T, T)) -> Self {
        let a = SingleQubitMessage::from_u3(first.0, first.1);
        let b = SingleQubitMessage::from_u3(second.0, second.1);
        Self {
            alpha: a.alpha * b.alpha,
            beta: a.alpha * b.beta,
            gamma: a.beta * b.alpha,
            delta: a.beta * b.beta,
        }
    }

    pub fn coefficients(&self) -> [Complex<T>; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn state(&self) -> StateVector<T> {
        StateVector::from_amplitudes(self.coefficients().to_vec())
            .expect("validated on construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Message<T: Real> {
    Single(SingleQubitMessage<T>),
    Two(TwoQubitMessage<T>),
}

impl<T: Real> Message<T> {
    pub fn protocol(&self) -> Protocol {
        match self {
            Message::Single(_) => Protocol::Single,
            Message::Two(_) => Protocol::Two,
        }
    }

    pub fn state(&self) -> Result<StateVector<T>> {
        Ok(match self {
            Message::Single(m) => m.state(),
            Message::Two(m) => m.state(),
        })
    }
}

impl<T: Real> From<SingleQubitMessage<T>> for Message<T> {
    fn from(m: SingleQubitMessage<T>) -> Self {
        Message::Single(m)
    }
}

impl<T: Real> From<TwoQubitMessage<T>> for Message<T> {
    fn from(m: TwoQubitMessage<T>) -> Self {
        Message::Two(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    EnumerateAll,
    Sample(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportOutcome<T: Real> {
    pub alice_bits: String,
    pub probability: T,
    pub bob_state_raw: StateVector<T>,
    pub bob_state_corrected: StateVector<T>,
    pub applied_correction: CorrectionRule,
}

/// Joint state after message preparation and channel construction.
fn prepared<T: Real>(message: &Message<T>) -> Result<StateVector<T>> {
    let protocol = message.protocol();
    let zeros = StateVector::zero(protocol.n_qubits() - protocol.message_qubits().len())?;
    let mut state = message.state()?.tensor(&zeros)?;
    state.apply_all(&protocol.channel_gates())?;
    Ok(state)
}

/// Splits `state` into Alice's outcomes and Bob's conditional states.
fn branches<T: Real>(
    protocol: Protocol,
    state: &StateVector<T>,
) -> Result<Vec<(String, T, StateVector<T>)>> {
    let n_alice = protocol.alice_qubits().len();
    let n_bob = protocol.bob_qubits().len();
    let amps = state.amplitudes();
    let mut out = Vec::new();
    for m in 0..1usize << n_alice {
        let block = &amps[m << n_bob..(m + 1) << n_bob];
        let p: T = block.iter().map(|c| c.norm_sqr()).sum();
        if p <= T::tol() {
            continue;
        }
        out.push((
            bit_string(m, n_alice),
            p,
            StateVector::normalized(block.to_vec())?,
        ));
    }
    let total: T = out.iter().map(|b| b.1).sum();
    if (total - T::one()).abs() > T::tol() {
        return Err(Error::Invariant(format!(
            "branch probabilities sum to {total}"
        )));
    }
    Ok(out)
}

/// Measure-then-correct teleportation of any message.
pub fn teleport<T: Real>(message: &Message<T>, mode: Mode) -> Result<Vec<TeleportOutcome<T>>> {
    let protocol = message.protocol();
    let mut state = prepared(message)?;
    state.apply_all(&protocol.alice_gates())?;
    let mut all = branches(protocol, &state)?;
    if let Mode::Sample(seed) = mode {
        let probs: Vec<T> = all.iter().map(|b| b.1).collect();
        let pick = Sampler::new(&probs).draw(&mut stream(seed, Purpose::Branch, 0));
        all = vec![all.swap_remove(pick)];
    }
    let target = message.state()?;
    let local: Vec<usize> = (0..protocol.bob_qubits().len()).collect();
    all.into_iter()
        .map(|(alice_bits, probability, raw)| {
            let rule = correction_lookup(protocol, &alice_bits)?;
            let mut corrected = raw.clone();
            corrected.apply_all(&rule.gates(&local))?;
            corrected.check_norm()?;
            let f = corrected.overlap(&target)?;
            if (f - T::one()).abs() > T::loose_tol() {
                return Err(Error::Invariant(format!(
                    "branch {alice_bits} teleported with fidelity {f}"
                )));
            }
            Ok(TeleportOutcome {
                alice_bits,
                probability,
                bob_state_raw: raw,
                bob_state_corrected: corrected,
                applied_correction: rule,
            })
        })
        .collect()
}

pub fn teleport_single<T: Real>(
    msg: &SingleQubitMessage<T>,
    mode: Mode,
) -> Result<Vec<TeleportOutcome<T>>> {
    teleport(&Message::Single(*msg), mode)
}

pub fn teleport_two<T: Real>(
    msg: &TwoQubitMessage<T>,
    mode: Mode,
) -> Result<Vec<TeleportOutcome<T>>> {
    teleport(&Message::Two(*msg), mode)
}

/// Labelled joint-state snapshots taken after each protocol step.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTrace<T: Real> {
    pub stages: Vec<(String, StateVector<T>)>,
}

impl<T: Real> ProtocolTrace<T> {
    pub fn get(&self, label: &str) -> Option<&StateVector<T>> {
        self.stages.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    fn record(&mut self, label: &str, state: &StateVector<T>) -> Result<()> {
        state.check_norm()?;
        self.stages.push((label.to_string(), state.clone()));
        Ok(())
    }
}

/// Stages `prepared`, `after_cnots`, `after_h_a`, `after_h_a2`.
pub fn trace_single<T: Real>(msg: &SingleQubitMessage<T>) -> Result<ProtocolTrace<T>> {
    let mut trace = ProtocolTrace { stages: vec![] };
    let mut state = prepared(&Message::Single(*msg))?;
    trace.record("prepared", &state)?;
    let gates = Protocol::Single.alice_gates();
    state.apply_all(&gates[..2])?;
    trace.record("after_cnots", &state)?;
    state.apply(&gates[2])?;
    trace.record("after_h_a", &state)?;
    state.apply(&gates[3])?;
    trace.record("after_h_a2", &state)?;
    Ok(trace)
}

/// Stages `prepared`, `after_cnots`, `after_hadamards`.
pub fn trace_two<T: Real>(msg: &TwoQubitMessage<T>) -> Result<ProtocolTrace<T>> {
    let mut trace = ProtocolTrace { stages: vec![] };
    let mut state = prepared(&Message::Two(*msg))?;
    trace.record("prepared", &state)?;
    let gates = Protocol::Two.alice_gates();
    state.apply_all(&gates[..2])?;
    trace.record("after_cnots", &state)?;
    state.apply_all(&gates[2..])?;
    trace.record("after_hadamards", &state)?;
    Ok(trace)
}

/// Message preparation, channel construction and Alice's gates, without corrections.
pub fn alice_circuit<T: Real>(message: &Message<T>) -> Result<Circuit<T>> {
    let protocol = message.protocol();
    let zeros = StateVector::zero(protocol.n_qubits() - protocol.message_qubits().len())?;
    let mut circuit = Circuit::from_state(message.state()?.tensor(&zeros)?);
    circuit
        .extend(protocol.channel_gates())
        .extend(protocol.alice_gates());
    circuit.validate()?;
    Ok(circuit)
}

/// Full protocol with corrections applied as controlled gates before any measurement.
pub fn deferred_circuit<T: Real>(message: &Message<T>) -> Result<Circuit<T>> {
    let mut circuit = alice_circuit(message)?;
    circuit.extend(message.protocol().deferred_corrections());
    Ok(circuit)
}

/// Bob's reduced density matrix at the end of the deferred-measurement circuit.
pub fn deferred_bob_density<T: Real>(message: &Message<T>) -> Result<DensityMatrix<T>> {
    deferred_circuit(message)?
        .run()?
        .reduced_density(&message.protocol().bob_qubits())
}

/// Alice's measurement record over `shots` runs, optionally under noise.
pub fn alice_histogram<T: Real>(
    message: &Message<T>,
    shots: usize,
    seed: u64,
    noise: Option<&NoiseModel>,
) -> Result<ShotHistogram> {
    let circuit = alice_circuit(message)?;
    let full = match noise {
        Some(nm) => noisy_run(&circuit, &nm.with_seed(seed), shots)?,
        None => sample_shots(&circuit.run()?, shots, seed)?,
    };
    full.marginal(&message.protocol().alice_qubits())
}
