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

//! Versioned result envelope shared by every subcommand.

use std::collections::BTreeMap;

use hyperteleport_core::tomography::FidelityMethod;
use hyperteleport_core::{ShotHistogram, SweepRow};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::schema::{DensityJson, MessageJson, Pair, StokesJson};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub outputs: Outputs,
}

impl ResultEnvelope {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, Value>,
        seed: u64,
        outputs: Outputs,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters,
            seed,
            outputs,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("envelope serialization is infallible");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outputs {
    Channel(ChannelOutput),
    Teleport(TeleportOutput),
    Density(DensityOutput),
    Fidelity(FidelityOutput),
    Compare(CompareOutput),
    Sweep(SweepOutput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeTerm {
    pub ket: String,
    pub amplitude: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelOutput {
    pub n_qubits: usize,
    pub hyperedges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alice_qubits: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob_qubits: Option<Vec<usize>>,
    /// Full amplitude vector, global phase fixed so the first nonzero entry is real positive.
    pub amplitudes: Vec<Pair>,
    /// Nonzero amplitudes only, in basis order.
    pub terms: Vec<AmplitudeTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSummary {
    pub alice_bits: String,
    pub probability: f64,
    pub correction: String,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeleportOutput {
    pub protocol: String,
    pub message: MessageJson,
    /// Alice's measurement record.
    pub histogram: ShotHistogram,
    pub branches: Vec<BranchSummary>,
    pub min_branch_fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityOutput {
    pub density: DensityJson,
    pub stokes: StokesJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity_to_target: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub histograms: BTreeMap<String, ShotHistogram>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityOutput {
    pub fidelity: f64,
    /// `fidelity` to four decimal places.
    pub rounded: String,
    pub method: FidelityMethod,
    pub clamped: bool,
    pub clamped_mass: f64,
    pub min_eigenvalue_e: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub n_qubits: usize,
    pub total_variation: f64,
    /// `frequency_b − frequency_a` for every outcome seen in either histogram.
    pub deltas: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub protocol: String,
    pub message: MessageJson,
    pub readout_flip: f64,
    pub shots: usize,
    pub trials: usize,
    pub rows: Vec<SweepRow>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperteleport_core::{sample_shots, State};

    fn round_trip(outputs: Outputs) {
        let mut params = BTreeMap::new();
        params.insert("shots".to_string(), Value::from(8192));
        let env = ResultEnvelope::new("test", params, 7, outputs);
        let text = env.to_json();
        let back: ResultEnvelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.to_json(), text);
        let raw: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(raw["schema_version"], "1");
    }

    fn message() -> MessageJson {
        MessageJson {
            alpha: Pair([0.6, 0.0]),
            beta: Pair([0.0, 0.8]),
            gamma: None,
            delta: None,
        }
    }

    #[test]
    fn every_output_kind_round_trips() {
        let hist = sample_shots(&State::plus(2).unwrap(), 1000, 3).unwrap();
        round_trip(Outputs::Channel(ChannelOutput {
            n_qubits: 1,
            hyperedges: vec![vec![0]],
            alice_qubits: None,
            bob_qubits: Some(vec![0]),
            amplitudes: vec![Pair([0.1 + 0.2, -1e-17]), Pair([std::f64::consts::PI, 0.0])],
            terms: vec![AmplitudeTerm {
                ket: "0".into(),
                amplitude: Pair([0.3, 0.0]),
            }],
        }));
        round_trip(Outputs::Teleport(TeleportOutput {
            protocol: "single".into(),
            message: message(),
            histogram: hist.clone(),
            branches: vec![BranchSummary {
                alice_bits: "000".into(),
                probability: 0.25,
                correction: "I".into(),
                fidelity: 0.9999999999999998,
            }],
            min_branch_fidelity: 0.9999999999999998,
        }));
        let mut histograms = BTreeMap::new();
        histograms.insert("XX".to_string(), hist.clone());
        round_trip(Outputs::Density(DensityOutput {
            density: DensityJson {
                n: 1,
                re: vec![vec![0.538, 0.0225], vec![0.0225, 0.462]],
                im: vec![vec![0.0, -0.0195], vec![0.0195, 0.0]],
            },
            stokes: [("I".to_string(), 1.0), ("X".to_string(), 0.045)]
                .into_iter()
                .collect(),
            fidelity_to_target: Some(0.7228),
            histograms,
        }));
        round_trip(Outputs::Fidelity(FidelityOutput {
            fidelity: 0.722841614740048,
            rounded: "0.7228".into(),
            method: FidelityMethod::PureState,
            clamped: false,
            clamped_mass: 0.0,
            min_eigenvalue_e: 0.4593,
        }));
        round_trip(Outputs::Compare(CompareOutput {
            n_qubits: 3,
            total_variation: 0.75,
            deltas: [("000".to_string(), -0.75)].into_iter().collect(),
        }));
        round_trip(Outputs::Sweep(SweepOutput {
            protocol: "single".into(),
            message: message(),
            readout_flip: 0.02,
            shots: 8192,
            trials: 2,
            rows: vec![SweepRow {
                gate_error_prob: 0.05,
                fidelity: 0.8821554523934543,
            }],
        }));
    }

    #[test]
    fn complex_values_are_pairs() {
        let text = serde_json::to_string(&message()).unwrap();
        assert_eq!(text, r#"{"alpha":[0.6,0.0],"beta":[0.0,0.8]}"#);
    }
}
