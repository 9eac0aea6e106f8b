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

//! Monte Carlo Pauli-error trajectories and readout flips.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, derive_seed, Purpose};
use crate::scalar::Real;
use crate::statevec::{Circuit, Gate, Sampler, ShotHistogram};
use crate::teleport::Message;
use crate::tomography::{fidelity, theoretical_density, tomograph, TomographyMode};

/// Per-gate stochastic Pauli error plus per-bit readout flips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// After each gate, probability of one random non-identity Pauli on one of the
    /// qubits the gate touched.
    #[serde(rename = "gate_error")]
    pub gate_error_prob: f64,
    /// Independent flip probability of each measured bit.
    #[serde(rename = "readout_flip")]
    pub readout_flip_prob: f64,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(gate_error_prob: f64, readout_flip_prob: f64, seed: u64) -> Result<Self> {
        let nm = Self {
            gate_error_prob,
            readout_flip_prob,
            seed,
        };
        nm.validate()?;
        Ok(nm)
    }

    pub fn noiseless(seed: u64) -> Self {
        Self {
            gate_error_prob: 0.0,
            readout_flip_prob: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("gate_error", self.gate_error_prob),
            ("readout_flip", self.readout_flip_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Argument(format!(
                    "{name} probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.gate_error_prob == 0.0 && self.readout_flip_prob == 0.0
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

#[derive(Debug, Clone, Copy)]
struct ErrorEvent {
    after_gate: usize,
    qubit: usize,
    pauli: u8,
}

fn pauli_gate<T: Real>(pauli: u8, qubit: usize) -> Gate<T> {
    match pauli {
        0 => Gate::X(qubit),
        1 => Gate::Y(qubit),
        _ => Gate::Z(qubit),
    }
}

/// Runs `shots` independent noisy trajectories of `circuit` and measures every qubit.
///
/// Draws come from three ChaCha8 streams per chunk of shots, all keyed by
/// `noise.seed`: gate errors, outcome sampling and readout flips. The outcome stream
/// is the one [`crate::statevec::sample_shots`] uses, so a noiseless model
/// reproduces its histogram exactly for the same seed.
pub fn noisy_run<T: Real>(
    circuit: &Circuit<T>,
    noise: &NoiseModel,
    shots: usize,
) -> Result<ShotHistogram> {
    noise.validate()?;
    if shots == 0 {
        return Err(Error::Argument("shots must be positive".into()));
    }
    circuit.validate()?;
    let n = circuit.n_qubits();
    let ideal = Sampler::new(&circuit.run()?.probabilities());
    let touched: Vec<Vec<usize>> = circuit.gates.iter().map(Gate::qubits).collect();
    let chunks: Vec<(u64, usize)> = rng::chunks(shots).collect();

    let partial: Vec<BTreeMap<usize, u64>> = chunks
        .par_iter()
        .map(|&(chunk, len)| {
            let mut err_rng = rng::stream(noise.seed, Purpose::GateError, chunk);
            let mut meas_rng = rng::stream(noise.seed, Purpose::Measure, chunk);
            let mut ro_rng = rng::stream(noise.seed, Purpose::Readout, chunk);
            let mut counts = BTreeMap::new();
            let mut events = Vec::new();
            for _ in 0..len {
                events.clear();
                if noise.gate_error_prob > 0.0 {
                    for (g, qubits) in touched.iter().enumerate() {
                        if err_rng.random::<f64>() < noise.gate_error_prob {
                            let qubit = qubits[err_rng.random_range(0..qubits.len())];
                            let pauli = err_rng.random_range(0..3u8);
                            events.push(ErrorEvent {
                                after_gate: g,
                                qubit,
                                pauli,
                            });
                        }
                    }
                }
                let mut outcome = if events.is_empty() {
                    ideal.draw(&mut meas_rng)
                } else {
                    let mut state = circuit.initial.clone();
                    let mut next = events.iter().peekable();
                    for (g, gate) in circuit.gates.iter().enumerate() {
                        state.apply(gate).expect("validated circuit");
                        while let Some(e) = next.next_if(|e| e.after_gate == g) {
                            state
                                .apply(&pauli_gate(e.pauli, e.qubit))
                                .expect("qubit from validated gate");
                        }
                    }
                    Sampler::new(&state.probabilities()).draw(&mut meas_rng)
                };
                if noise.readout_flip_prob > 0.0 {
                    for q in 0..n {
                        if ro_rng.random::<f64>() < noise.readout_flip_prob {
                            outcome ^= 1 << (n - 1 - q);
                        }
                    }
                }
                *counts.entry(outcome).or_insert(0) += 1;
            }
            counts
        })
        .collect();

    let merged = crate::statevec::merge_counts(partial);
    Ok(ShotHistogram::from_index_counts(n, &merged, noise.seed))
}

/// Settings of a fidelity-versus-noise sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Gate error probabilities, ascending.
    pub grid: Vec<f64>,
    pub readout_flip_prob: f64,
    /// Shots per tomography setting.
    pub shots: usize,
    pub seed: u64,
    /// Independent pipeline repetitions averaged per grid point.
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub gate_error_prob: f64,
    pub fidelity: f64,
}

/// Teleports `message` through the deferred-measurement circuit under noise, runs
/// sampled tomography on Bob's register and reports the mean fidelity against the
/// message at every grid point.
///
/// Trial `t` uses the same derived seed at every grid point.
pub fn fidelity_vs_noise<T: Real>(
    message: &Message<T>,
    config: &SweepConfig,
) -> Result<Vec<SweepRow>> {
    if config.grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Argument(
            "noise grid must be sorted ascending".into(),
        ));
    }
    if config.trials == 0 {
        return Err(Error::Argument("at least one trial is required".into()));
    }
    let circuit = crate::teleport::deferred_circuit(message)?;
    let bob = message.protocol().bob_qubits();
    let reference = theoretical_density(&message.state()?);

    config
        .grid
        .iter()
        .map(|&p| {
            let mut total = 0.0;
            for t in 0..config.trials {
                let seed = derive_seed(config.seed, Purpose::Trial, t as u64);
                let noise = NoiseModel::new(p, config.readout_flip_prob, seed)?;
                let mode = TomographyMode::Sampled {
                    shots: config.shots,
                    seed,
                };
                let result = tomograph(&circuit, &bob, mode, Some(&noise))?;
                total += fidelity(&reference, &result.density)?.value.to_f64_lossy();
            }
            Ok(SweepRow {
                gate_error_prob: p,
                fidelity: total / config.trials as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::{sample_shots, StateVector};

    fn bell_circuit() -> Circuit<f64> {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::H(0)).push(Gate::cnot(0, 1));
        c
    }

    #[test]
    fn noiseless_limit_matches_plain_sampling() {
        let c = bell_circuit();
        let noisy = noisy_run(&c, &NoiseModel::noiseless(77), 5000).unwrap();
        let plain = sample_shots(&c.run().unwrap(), 5000, 77).unwrap();
        assert_eq!(noisy, plain);
    }

    #[test]
    fn full_readout_scrambling_gives_uniform_marginals() {
        let c = Circuit::from_state(StateVector::<f64>::zero(3).unwrap());
        let h = noisy_run(&c, &NoiseModel::new(0.0, 0.5, 5).unwrap(), 8192).unwrap();
        let sigma = (0.25f64 / 8192.0).sqrt();
        for q in 0..3 {
            let f = h.marginal(&[q]).unwrap().frequency("1");
            assert!((f - 0.5).abs() <= 4.0 * sigma, "qubit {q}: {f}");
        }
    }

    #[test]
    fn certain_readout_flip_inverts_outcomes() {
        let c = Circuit::from_state(StateVector::<f64>::zero(2).unwrap());
        let h = noisy_run(&c, &NoiseModel::new(0.0, 1.0, 5).unwrap(), 100).unwrap();
        assert_eq!(h.count("11"), 100);
    }

    #[test]
    fn gate_errors_leak_into_forbidden_outcomes() {
        let c = bell_circuit();
        let h = noisy_run(&c, &NoiseModel::new(0.3, 0.0, 3).unwrap(), 4096).unwrap();
        assert!(h.count("01") + h.count("10") > 0);
        assert_eq!(
            h,
            noisy_run(&c, &NoiseModel::new(0.3, 0.0, 3).unwrap(), 4096).unwrap()
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(NoiseModel::new(1.2, 0.0, 0).is_err());
        assert!(NoiseModel::new(0.0, -0.1, 0).is_err());
        let nm: NoiseModel =
            serde_json::from_str(r#"{"gate_error": 0.05, "readout_flip": 0.02, "seed": 7}"#)
                .unwrap();
        assert_eq!(nm, NoiseModel::new(0.05, 0.02, 7).unwrap());
    }
}
