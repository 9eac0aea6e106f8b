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

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bit_string, StateVector};
use crate::error::{Error, Result};
use crate::rng::{self, Purpose};
use crate::scalar::Real;

/// Measurement counts keyed by bit string (qubit 0 first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    pub n_qubits: usize,
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
    pub seed: u64,
}

impl ShotHistogram {
    /// Builds a histogram from basis-index counts.
    pub fn from_index_counts(n_qubits: usize, counts: &BTreeMap<usize, u64>, seed: u64) -> Self {
        let counts: BTreeMap<String, u64> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&i, &c)| (bit_string(i, n_qubits), c))
            .collect();
        let shots = counts.values().sum();
        Self {
            n_qubits,
            counts,
            shots,
            seed,
        }
    }

    /// Checks the structural invariants; used after deserialising untrusted input.
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::Input("histogram has zero shots".into()));
        }
        let total: u64 = self.counts.values().sum();
        if total != self.shots {
            return Err(Error::Input(format!(
                "counts sum to {total} but shots = {}",
                self.shots
            )));
        }
        for key in self.counts.keys() {
            if key.len() != self.n_qubits || !key.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Input(format!(
                    "bad histogram key {key:?} for {} qubits",
                    self.n_qubits
                )));
            }
        }
        Ok(())
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn frequency(&self, key: &str) -> f64 {
        self.count(key) as f64 / self.shots as f64
    }

    /// Counts of the listed qubits only, in the listed order.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Self> {
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::Argument(format!(
                "qubit {q} not in a {}-qubit histogram",
                self.n_qubits
            )));
        }
        let mut counts = BTreeMap::new();
        for (key, &c) in &self.counts {
            let bytes = key.as_bytes();
            let sub: String = qubits.iter().map(|&q| bytes[q] as char).collect();
            *counts.entry(sub).or_insert(0) += c;
        }
        Ok(Self {
            n_qubits: qubits.len(),
            counts,
            shots: self.shots,
            seed: self.seed,
        })
    }

    /// Total variation distance between the two empirical distributions.
    pub fn total_variation(&self, other: &Self) -> Result<f64> {
        Ok(self.deltas(other)?.values().map(|d| d.abs()).sum::<f64>() / 2.0)
    }

    /// `frequency(other) - frequency(self)` for every key seen in either histogram.
    pub fn deltas(&self, other: &Self) -> Result<BTreeMap<String, f64>> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Input(format!(
                "histograms cover {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .counts
            .keys()
            .chain(other.counts.keys())
            .map(|k| (k.clone(), other.frequency(k) - self.frequency(k)))
            .collect())
    }
}

/// Inverse-CDF sampler over basis indices.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
    last_nonzero: usize,
}

impl Sampler {
    pub fn new<T: Real>(probabilities: &[T]) -> Self {
        let mut acc = 0.0;
        let cdf: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p.to_f64_lossy().max(0.0);
                acc
            })
            .collect();
        let last_nonzero = probabilities
            .iter()
            .rposition(|p| p.to_f64_lossy() > 0.0)
            .unwrap_or(0);
        Self { cdf, last_nonzero }
    }

    /// Maps a uniform draw in `[0, 1)` to a basis index.
    pub fn index(&self, u: f64) -> usize {
        let total = self.cdf.last().copied().unwrap_or(1.0);
        let target = u * total;
        self.cdf
            .partition_point(|&c| c <= target)
            .min(self.last_nonzero)
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.index(rng.random::<f64>())
    }
}

/// Draws `shots` i.i.d. Born-rule outcomes from `state`.
///
/// Shot `k` lives in chunk `k / SHOTS_PER_CHUNK`, and each chunk reads its own
/// ChaCha8 stream (`Purpose::Measure`), so the histogram depends only on
/// `(state, shots, seed)` and not on how chunks are scheduled.
pub fn sample_shots<T: Real>(
    state: &StateVector<T>,
    shots: usize,
    seed: u64,
) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::Argument("shots must be positive".into()));
    }
    let sampler = Sampler::new(&state.probabilities());
    let chunks: Vec<(u64, usize)> = rng::chunks(shots).collect();
    let partial: Vec<BTreeMap<usize, u64>> = chunks
        .par_iter()
        .map(|&(chunk, len)| {
            let mut rng = rng::stream(seed, Purpose::Measure, chunk);
            let mut counts = BTreeMap::new();
            for _ in 0..len {
                *counts.entry(sampler.draw(&mut rng)).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    Ok(ShotHistogram::from_index_counts(
        state.n_qubits(),
        &merge_counts(partial),
        seed,
    ))
}

pub(crate) fn merge_counts(parts: Vec<BTreeMap<usize, u64>>) -> BTreeMap<usize, u64> {
    let mut total = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *total.entry(k).or_insert(0) += v;
        }
    }
    total
}
