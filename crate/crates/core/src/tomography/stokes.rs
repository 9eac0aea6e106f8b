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

//! Measurement settings, Stokes-parameter estimation and linear-inversion
//! reconstruction.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix};
use crate::scalar::Real;
use crate::statevec::{Gate, ShotHistogram, StateVector};

/// Largest register the tomography routines accept.
pub const MAX_TOMOGRAPHY_QUBITS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];

    pub fn symbol(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Y => 'Y',
            Basis::Z => 'Z',
        }
    }

    /// Gates that map this basis onto the computational basis, `+1 ↦ |0⟩`.
    pub fn rotation<T: Real>(self, qubit: usize) -> Vec<Gate<T>> {
        match self {
            Basis::X => vec![Gate::H(qubit)],
            Basis::Y => vec![Gate::Sdg(qubit), Gate::H(qubit)],
            Basis::Z => vec![],
        }
    }
}

/// One per-qubit choice of measurement basis, e.g. `XZ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementSetting {
    pub bases: Vec<Basis>,
}

impl MeasurementSetting {
    pub fn parse(label: &str) -> Result<Self> {
        let bases = label
            .chars()
            .map(|ch| match ch {
                'X' => Ok(Basis::X),
                'Y' => Ok(Basis::Y),
                'Z' => Ok(Basis::Z),
                _ => Err(Error::Input(format!("bad measurement setting {label:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bases.is_empty() {
            return Err(Error::Input("empty measurement setting".into()));
        }
        Ok(Self { bases })
    }

    /// Setting used to estimate a Pauli label: identity positions are measured in Z
    /// and then ignored.
    pub fn canonical_for(label: &str) -> Result<Self> {
        Self::parse(&label.replace('I', "Z"))
    }

    pub fn label(&self) -> String {
        self.bases.iter().map(|b| b.symbol()).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.bases.len()
    }

    /// Pre-measurement rotation, basis `i` applied to `qubits[i]`.
    pub fn rotation<T: Real>(&self, qubits: &[usize]) -> Vec<Gate<T>> {
        self.bases
            .iter()
            .zip(qubits)
            .flat_map(|(b, &q)| b.rotation(q))
            .collect()
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn check_tomography_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TOMOGRAPHY_QUBITS {
        return Err(Error::Size(format!(
            "tomography supports 1..={MAX_TOMOGRAPHY_QUBITS} qubits, got {n}"
        )));
    }
    Ok(())
}

/// All `3^n` settings, qubit 0 varying slowest.
pub fn measurement_plan(n: usize) -> Result<Vec<MeasurementSetting>> {
    check_tomography_size(n)?;
    let mut plan = vec![MeasurementSetting { bases: vec![] }];
    for _ in 0..n {
        plan = plan
            .into_iter()
            .flat_map(|s| {
                Basis::ALL.into_iter().map(move |b| {
                    let mut bases = s.bases.clone();
                    bases.push(b);
                    MeasurementSetting { bases }
                })
            })
            .collect();
    }
    Ok(plan)
}

/// All `4^n` Pauli labels over `{I, X, Y, Z}`, qubit 0 varying slowest.
pub fn pauli_labels(n: usize) -> Vec<String> {
    let mut labels = vec![String::new()];
    for _ in 0..n {
        labels = labels
            .into_iter()
            .flat_map(|l| "IXYZ".chars().map(move |c| format!("{l}{c}")))
            .collect();
    }
    labels
}

/// Pauli expectation values `T_L` for every label `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesTensor<T: Real> {
    n_qubits: usize,
    values: BTreeMap<String, T>,
}

impl<T: Real> StokesTensor<T> {
    /// Validates completeness, the all-identity normalisation, and the `[-1, 1]` range.
    pub fn new(n_qubits: usize, values: BTreeMap<String, T>) -> Result<Self> {
        check_tomography_size(n_qubits)?;
        let labels = pauli_labels(n_qubits);
        if let Some(missing) = labels.iter().find(|l| !values.contains_key(*l)) {
            return Err(Error::Input(format!(
                "Stokes tensor is missing label {missing}"
            )));
        }
        if values.len() != labels.len() {
            return Err(Error::Input(
                "Stokes tensor has labels of the wrong length or alphabet".into(),
            ));
        }
        let identity = "I".repeat(n_qubits);
        if values[&identity] != T::one() {
            return Err(Error::Input(format!("T_{identity} must be exactly 1")));
        }
        if let Some((l, v)) = values
            .iter()
            .find(|(_, v)| v.abs() > T::one() + T::loose_tol() || v.is_nan())
        {
            return Err(Error::Input(format!("T_{l} = {v} outside [-1, 1]")));
        }
        Ok(Self { n_qubits, values })
    }

    /// Exact expectations of a pure state.
    pub fn exact(state: &StateVector<T>) -> Result<Self> {
        check_tomography_size(state.n_qubits())?;
        let values = pauli_labels(state.n_qubits())
            .into_iter()
            .map(|l| state.expectation_pauli(&l).map(|v| (l, v)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut values = values;
        values.insert("I".repeat(state.n_qubits()), T::one());
        Self::new(state.n_qubits(), values)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, label: &str) -> Option<T> {
        self.values.get(label).copied()
    }

    pub fn values(&self) -> &BTreeMap<String, T> {
        &self.values
    }
}

/// Estimates every `T_L` from per-setting outcome distributions.
///
/// `distributions[s][i]` is the probability (or empirical frequency) of outcome `i`
/// under setting `s`, with outcome bits ordered like the setting. `T_L` is read from
/// the setting that equals `L` with `I` replaced by `Z`, as the expectation of
/// `∏_{i: L_i ≠ I} (-1)^{bit_i}`. The all-identity label is fixed to 1.
pub fn stokes_from_distributions<T: Real>(
    n_qubits: usize,
    distributions: &BTreeMap<MeasurementSetting, Vec<T>>,
) -> Result<StokesTensor<T>> {
    for setting in measurement_plan(n_qubits)? {
        match distributions.get(&setting) {
            None => {
                return Err(Error::Input(format!(
                    "missing measurement setting {setting}"
                )))
            }
            Some(d) if d.len() != 1 << n_qubits => {
                return Err(Error::Input(format!(
                    "setting {setting} has {} outcomes",
                    d.len()
                )))
            }
            Some(_) => {}
        }
    }
    let mut values = BTreeMap::new();
    for label in pauli_labels(n_qubits) {
        if label.chars().all(|c| c == 'I') {
            values.insert(label, T::one());
            continue;
        }
        let dist = &distributions[&MeasurementSetting::canonical_for(&label)?];
        let mask = label
            .chars()
            .enumerate()
            .filter(|(_, c)| *c != 'I')
            .fold(0usize, |m, (q, _)| m | 1 << (n_qubits - 1 - q));
        let value = dist
            .iter()
            .enumerate()
            .map(|(outcome, &p)| {
                if (outcome & mask).count_ones() % 2 == 0 {
                    p
                } else {
                    -p
                }
            })
            .sum();
        values.insert(label, value);
    }
    StokesTensor::new(n_qubits, values)
}

/// Estimates the Stokes tensor from one histogram per setting.
pub fn stokes_from_histograms<T: Real>(
    histograms: &BTreeMap<MeasurementSetting, ShotHistogram>,
) -> Result<StokesTensor<T>> {
    let n = histograms
        .keys()
        .next()
        .map(|s| s.n_qubits())
        .ok_or_else(|| Error::Input("no histograms".into()))?;
    let shots = histograms.values().next().map(|h| h.shots).unwrap_or(0);
    let mut distributions = BTreeMap::new();
    for (setting, h) in histograms {
        h.validate()?;
        if h.n_qubits != n || setting.n_qubits() != n {
            return Err(Error::Input(format!(
                "setting {setting} does not cover {n} qubits"
            )));
        }
        if h.shots != shots {
            return Err(Error::Input(format!(
                "setting {setting} has {} shots, expected {shots}",
                h.shots
            )));
        }
        let mut dist = vec![T::zero(); 1 << n];
        for (key, &count) in &h.counts {
            let idx = crate::statevec::parse_bit_string(key)?;
            dist[idx] = T::lit(count as f64 / shots as f64);
        }
        distributions.insert(setting.clone(), dist);
    }
    stokes_from_distributions(n, &distributions)
}

/// `ρ = 2^{-n} Σ_L T_L σ_L`
pub fn reconstruct_density<T: Real>(stokes: &StokesTensor<T>) -> Result<DensityMatrix<T>> {
    let n = stokes.n_qubits;
    let mut rho = CMatrix::zeros(1 << n);
    let norm = T::one() / T::lit((1u64 << n) as f64);
    for (label, &value) in &stokes.values {
        if value == T::zero() {
            continue;
        }
        let sigma =
            pauli::tensor::<T>(label).ok_or_else(|| Error::Input(format!("bad label {label}")))?;
        rho = &rho + &sigma.scale(Complex::new(value * norm, T::zero()));
    }
    DensityMatrix::new(n, rho)
}
