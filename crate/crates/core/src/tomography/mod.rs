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

//! Density matrices, Pauli-basis state tomography and Uhlmann fidelity.

mod density;
mod fidelity;
mod stokes;

pub use density::{theoretical_density, DensityMatrix};
pub use fidelity::{fidelity, fidelity_general, fidelity_pure, FidelityMethod, FidelityReport};
pub use stokes::{
    measurement_plan, pauli_labels, reconstruct_density, stokes_from_distributions,
    stokes_from_histograms, Basis, MeasurementSetting, StokesTensor, MAX_TOMOGRAPHY_QUBITS,
};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::noise::{noisy_run, NoiseModel};
use crate::rng::{derive_seed, Purpose};
use crate::scalar::Real;
use crate::statevec::{sample_shots, Circuit, ShotHistogram, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TomographyMode {
    /// Born-rule probabilities instead of samples.
    Exact,
    /// `shots` samples per setting. Setting `k` uses a seed derived from
    /// `(seed, k)`.
    Sampled { shots: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct TomographyResult<T: Real> {
    pub density: DensityMatrix<T>,
    pub stokes: StokesTensor<T>,
    /// Marginal histograms on the tomographed qubits, keyed by setting label.
    /// Empty in exact mode.
    pub histograms: BTreeMap<String, ShotHistogram>,
}

/// Outcome distribution of `qubits` after rotating them into `setting`.
pub fn exact_distribution<T: Real>(
    state: &StateVector<T>,
    setting: &MeasurementSetting,
    qubits: &[usize],
) -> Result<Vec<T>> {
    let mut rotated = state.clone();
    rotated.apply_all(&setting.rotation(qubits))?;
    let n = state.n_qubits();
    let k = qubits.len();
    let mut dist = vec![T::zero(); 1 << k];
    for (i, p) in rotated.probabilities().into_iter().enumerate() {
        let sub = qubits
            .iter()
            .fold(0usize, |acc, &q| acc << 1 | (i >> (n - 1 - q) & 1));
        dist[sub] += p;
    }
    Ok(dist)
}

/// Reconstructs the reduced state of `qubits` at the end of `circuit`.
///
/// Each setting of the plan appends its basis rotation to the circuit; the outcomes
/// of `qubits` are then either computed exactly or sampled (optionally under
/// `noise`), turned into Stokes parameters and inverted linearly.
pub fn tomograph<T: Real>(
    circuit: &Circuit<T>,
    qubits: &[usize],
    mode: TomographyMode,
    noise: Option<&NoiseModel>,
) -> Result<TomographyResult<T>> {
    let k = qubits.len();
    let plan = measurement_plan(k)?;
    for (i, &q) in qubits.iter().enumerate() {
        if q >= circuit.n_qubits() || qubits[..i].contains(&q) {
            return Err(Error::Argument(format!("invalid tomography qubit {q}")));
        }
    }
    circuit.validate()?;

    match mode {
        TomographyMode::Exact => {
            if noise.is_some_and(|nm| !nm.is_noiseless()) {
                return Err(Error::Argument(
                    "exact tomography cannot model stochastic noise".into(),
                ));
            }
            let state = circuit.run()?;
            let distributions = plan
                .iter()
                .map(|s| exact_distribution(&state, s, qubits).map(|d| (s.clone(), d)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let stokes = stokes_from_distributions(k, &distributions)?;
            let density = reconstruct_density(&stokes)?;
            Ok(TomographyResult {
                density,
                stokes,
                histograms: BTreeMap::new(),
            })
        }
        TomographyMode::Sampled { shots, seed } => {
            if shots == 0 {
                return Err(Error::Argument("shots must be positive".into()));
            }
            let hists = plan
                .par_iter()
                .enumerate()
                .map(|(idx, setting)| {
                    let setting_seed = derive_seed(seed, Purpose::Setting, idx as u64);
                    let mut rotated = circuit.clone();
                    rotated.extend(setting.rotation(qubits));
                    let full = match noise {
                        Some(nm) => noisy_run(&rotated, &nm.with_seed(setting_seed), shots)?,
                        None => sample_shots(&rotated.run()?, shots, setting_seed)?,
                    };
                    Ok((setting.clone(), full.marginal(qubits)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let by_setting: BTreeMap<_, _> = hists.into_iter().collect();
            let stokes = stokes_from_histograms(&by_setting)?;
            let density = reconstruct_density(&stokes)?;
            let histograms = by_setting
                .into_iter()
                .map(|(s, h)| (s.label(), h))
                .collect();
            Ok(TomographyResult {
                density,
                stokes,
                histograms,
            })
        }
    }
}

/// Tomography of every qubit of a prepared state.
pub fn tomograph_state<T: Real>(
    state: &StateVector<T>,
    mode: TomographyMode,
) -> Result<DensityMatrix<T>> {
    let qubits: Vec<usize> = (0..state.n_qubits()).collect();
    Ok(tomograph(&Circuit::from_state(state.clone()), &qubits, mode, None)?.density)
}
