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

//! JSON wire formats. Complex numbers travel as `[re, im]` pairs.

use std::collections::BTreeMap;

use hyperteleport_core::{CMatrix, Complex64, Density, Message, PairMessage, QubitMessage, State};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A complex number as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pair(pub [f64; 2]);

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair([z.re, z.im])
    }
}

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0[0], p.0[1])
    }
}

/// `{"alpha": [re, im], "beta": [re, im]}`, plus `gamma` and `delta` for two qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageJson {
    pub alpha: Pair,
    pub beta: Pair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Pair>,
}

impl MessageJson {
    pub fn to_message(&self) -> CliResult<Message<f64>> {
        let (a, b) = (self.alpha.into(), self.beta.into());
        match (self.gamma, self.delta) {
            (None, None) => Ok(Message::Single(QubitMessage::new(a, b)?)),
            (Some(g), Some(d)) => Ok(Message::Two(PairMessage::new(a, b, g.into(), d.into())?)),
            _ => Err(CliError::Input(
                "a two-qubit message needs both gamma and delta".into(),
            )),
        }
    }
}

impl From<&Message<f64>> for MessageJson {
    fn from(m: &Message<f64>) -> Self {
        match m {
            Message::Single(s) => MessageJson {
                alpha: s.alpha.into(),
                beta: s.beta.into(),
                gamma: None,
                delta: None,
            },
            Message::Two(t) => MessageJson {
                alpha: t.alpha.into(),
                beta: t.beta.into(),
                gamma: Some(t.gamma.into()),
                delta: Some(t.delta.into()),
            },
        }
    }
}

/// `{"n": 1, "re": [[..]], "im": [[..]]}` with row-major `2^n × 2^n` arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityJson {
    pub fn to_density(&self) -> CliResult<Density> {
        let dim = 1usize
            .checked_shl(self.n as u32)
            .filter(|_| self.n >= 1 && self.n <= 12)
            .ok_or_else(|| CliError::Input(format!("unsupported qubit count {}", self.n)))?;
        let square = |m: &Vec<Vec<f64>>| m.len() == dim && m.iter().all(|r| r.len() == dim);
        if !square(&self.re) || !square(&self.im) {
            return Err(CliError::Input(format!(
                "density matrix for n = {} must be {dim}×{dim}",
                self.n
            )));
        }
        let rows: Vec<Vec<Complex64>> = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| {
                r.iter()
                    .zip(i)
                    .map(|(&a, &b)| Complex64::new(a, b))
                    .collect()
            })
            .collect();
        Ok(Density::new(self.n, CMatrix::from_rows(&rows))?)
    }
}

impl From<&Density> for DensityJson {
    fn from(rho: &Density) -> Self {
        let d = rho.dim();
        let m = rho.matrix();
        DensityJson {
            n: rho.n_qubits(),
            re: (0..d)
                .map(|i| (0..d).map(|j| m[(i, j)].re).collect())
                .collect(),
            im: (0..d)
                .map(|i| (0..d).map(|j| m[(i, j)].im).collect())
                .collect(),
        }
    }
}

/// `{"n": 2, "amplitudes": [[re, im], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub n: usize,
    pub amplitudes: Vec<Pair>,
}

impl StateJson {
    pub fn to_state(&self) -> CliResult<State> {
        if self.amplitudes.len() != 1usize << self.n.min(30) {
            return Err(CliError::Input(format!(
                "{} amplitudes given for n = {}",
                self.amplitudes.len(),
                self.n
            )));
        }
        Ok(State::from_amplitudes(
            self.amplitudes.iter().map(|&p| p.into()).collect(),
        )?)
    }
}

impl From<&State> for StateJson {
    fn from(s: &State) -> Self {
        StateJson {
            n: s.n_qubits(),
            amplitudes: s.amplitudes().iter().map(|&a| a.into()).collect(),
        }
    }
}

/// A state file holds either a plain state vector or a message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    State(StateJson),
    Message(MessageJson),
}

impl StateFile {
    pub fn to_state(&self) -> CliResult<State> {
        match self {
            StateFile::State(s) => s.to_state(),
            StateFile::Message(m) => Ok(m.to_message()?.state()?),
        }
    }
}

/// Pauli expectation values keyed by label, e.g. `{"XZ": 0.013, ...}`.
pub type StokesJson = BTreeMap<String, f64>;

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
