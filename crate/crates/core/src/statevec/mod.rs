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

//! Dense statevector simulation.
//!
//! Basis index `i` of an `n`-qubit register encodes the ket `|q0 q1 ... q(n-1)⟩` with
//! qubit 0 as the most significant bit, so the bit string of `i` reads exactly like
//! the ket label.

mod circuit;
mod gate;
mod sampling;

pub use circuit::Circuit;
pub use gate::{Base, Control, Gate, Polarity};
pub(crate) use sampling::merge_counts;
pub use sampling::{sample_shots, Sampler, ShotHistogram};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::tomography::DensityMatrix;

/// Largest register this dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Formats basis index `index` as an `n`-character bit string, qubit 0 first.
pub fn bit_string(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if index >> (n - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Parses a bit string written qubit 0 first.
pub fn parse_bit_string(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(Error::Argument(format!(
            "bit string {bits:?} has invalid length"
        )));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::Argument(format!(
            "bit string {bits:?} contains {ch:?}"
        ))),
    })
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Size(format!(
            "{n} qubits outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Normalised amplitude vector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩`
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_size(n)?;
        if index >= 1 << n {
            return Err(Error::Argument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits: n, amps })
    }

    /// Basis state from a ket label such as `"101"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        Self::basis(bits.len(), parse_bit_string(bits)?)
    }

    /// `|+⟩^⊗n`
    pub fn plus(n: usize) -> Result<Self> {
        check_size(n)?;
        let a = T::one() / T::lit((1u64 << n) as f64).sqrt();
        Ok(Self {
            n_qubits: n,
            amps: vec![Complex::new(a, T::zero()); 1 << n],
        })
    }

    /// Wraps explicit amplitudes. The length must be a power of two and the vector
    /// normalised within [`Real::tol`].
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Size(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_size(n)?;
        let state = Self { n_qubits: n, amps };
        let norm = state.norm_sqr();
        if (norm - T::one()).abs() > T::tol() {
            return Err(Error::Argument(format!(
                "state is not normalised (norm² = {norm})"
            )));
        }
        Ok(state)
    }

    /// Like [`Self::from_amplitudes`] but rescales instead of rejecting.
    pub fn normalized(amps: Vec<Complex<T>>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            return Err(Error::Argument("cannot normalise the zero vector".into()));
        }
        Self::from_amplitudes(amps.into_iter().map(|a| a / norm).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Amplitude of the ket written as a bit string.
    pub fn amplitude(&self, bits: &str) -> Result<Complex<T>> {
        if bits.len() != self.n_qubits {
            return Err(Error::Argument(format!(
                "ket {bits:?} does not have {} qubits",
                self.n_qubits
            )));
        }
        Ok(self.amps[parse_bit_string(bits)?])
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_norm(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if (norm - T::one()).abs() > T::tol() {
            return Err(Error::Invariant(format!("norm² drifted to {norm}")));
        }
        Ok(())
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Argument(
                "inner product of states with different sizes".into(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |s, x| s + x))
    }

    /// `|⟨self|other⟩|`: 1 exactly when the states agree up to global phase.
    pub fn overlap(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm())
    }

    /// Copy with the global phase chosen so the first non-negligible amplitude is
    /// real and positive.
    pub fn phase_fixed(&self) -> Self {
        let mut out = self.clone();
        if let Some(first) = self.amps.iter().find(|a| a.norm() > T::tol()) {
            let rot = first.conj() / first.norm();
            out.amps.iter_mut().for_each(|a| *a *= rot);
        }
        out
    }

    /// `self ⊗ other`; the qubits of `self` come first.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_size(self.n_qubits + other.n_qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        })
    }

    pub fn apply(&mut self, gate: &Gate<T>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        gate.apply_unchecked(&mut self.amps, self.n_qubits);
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate<T>>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// Nonzero terms as `(ket, amplitude)` pairs in basis order.
    pub fn terms(&self) -> Vec<(String, Complex<T>)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > T::tol())
            .map(|(i, a)| (bit_string(i, self.n_qubits), *a))
            .collect()
    }

    /// `⟨ψ| P₀ ⊗ P₁ ⊗ … |ψ⟩` for a label string over `{I, X, Y, Z}`.
    pub fn expectation_pauli(&self, labels: &str) -> Result<T> {
        if labels.chars().count() != self.n_qubits {
            return Err(Error::Argument(format!(
                "label {labels:?} does not have {} characters",
                self.n_qubits
            )));
        }
        let mut image = self.clone();
        for (q, ch) in labels.chars().enumerate() {
            let gate = match ch {
                'I' => continue,
                'X' => Gate::X(q),
                'Y' => Gate::Y(q),
                'Z' => Gate::Z(q),
                other => return Err(Error::Argument(format!("bad Pauli label {other:?}"))),
            };
            gate.apply_unchecked(&mut image.amps, self.n_qubits);
        }
        let value = self.inner(&image)?;
        if value.im.abs() > T::loose_tol() {
            return Err(Error::Invariant(format!(
                "Pauli expectation has imaginary part {}",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// Partial trace over every qubit not listed in `keep`. The listed order becomes
    /// the qubit order of the result.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        if keep.is_empty() {
            return Err(Error::Argument(
                "reduced density needs at least one kept qubit".into(),
            ));
        }
        for (i, &q) in keep.iter().enumerate() {
            if q >= self.n_qubits || keep[..i].contains(&q) {
                return Err(Error::Argument(format!("invalid kept qubit {q}")));
            }
        }
        let n = self.n_qubits;
        let k = keep.len();
        let env: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let bit = |q: usize| 1usize << (n - 1 - q);
        let scatter = |value: usize, qubits: &[usize]| {
            qubits.iter().enumerate().fold(0usize, |acc, (j, &q)| {
                if value >> (qubits.len() - 1 - j) & 1 == 1 {
                    acc | bit(q)
                } else {
                    acc
                }
            })
        };
        let kept_offsets: Vec<usize> = (0..1usize << k).map(|v| scatter(v, keep)).collect();

        let dim = 1 << k;
        let mut rho = CMatrix::zeros(dim);
        let mut slice = vec![Complex::new(T::zero(), T::zero()); dim];
        for e in 0..1usize << env.len() {
            let base = scatter(e, &env);
            for (r, off) in kept_offsets.iter().enumerate() {
                slice[r] = self.amps[base | off];
            }
            for r in 0..dim {
                if slice[r].norm_sqr() == T::zero() {
                    continue;
                }
                for c in 0..dim {
                    rho[(r, c)] += slice[r] * slice[c].conj();
                }
            }
        }
        DensityMatrix::new(k, rho)
    }
}

/// `|+⟩^⊗n`
pub fn plus_state<T: Real>(n: usize) -> Result<StateVector<T>> {
    StateVector::plus(n)
}

/// Returns `U·state` for the gate embedded at its qubits.
pub fn apply_gate<T: Real>(state: &StateVector<T>, gate: &Gate<T>) -> Result<StateVector<T>> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}
