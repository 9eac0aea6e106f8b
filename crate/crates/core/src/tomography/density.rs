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

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::statevec::StateVector;

/// Hermitian, unit-trace matrix over `n_qubits` qubits.
///
/// Positivity is not enforced: linear-inversion reconstructions from finite samples
/// can carry small negative eigenvalues. Use [`DensityMatrix::min_eigenvalue`] to
/// inspect and [`DensityMatrix::project_psd`] to repair.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    n_qubits: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(n_qubits: usize, matrix: CMatrix<T>) -> Result<Self> {
        if n_qubits == 0 || matrix.dim() != 1 << n_qubits {
            return Err(Error::Input(format!(
                "{}x{0} matrix is not a {n_qubits}-qubit operator",
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > T::loose_tol() {
            return Err(Error::Input(format!(
                "matrix is not Hermitian (defect {defect})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::loose_tol() || tr.im.abs() > T::loose_tol() {
            return Err(Error::Input(format!("trace is {tr}, expected 1")));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn pure(state: &StateVector<T>) -> Self {
        Self {
            n_qubits: state.n_qubits(),
            matrix: CMatrix::outer(state.amplitudes()),
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let w = Complex::new(T::one() / T::lit(dim as f64), T::zero());
        Self {
            n_qubits,
            matrix: CMatrix::identity(dim).scale(w),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.matrix.eigh().values
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues().first().copied().unwrap_or_else(T::zero)
    }

    pub fn is_psd(&self, tol: T) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// If the matrix is a projector onto one state within `tol`, returns that state.
    pub fn as_pure(&self, tol: T) -> Option<Vec<Complex<T>>> {
        let eig = self.matrix.eigh();
        let (top, rest) = eig.values.split_last()?;
        let residual: T = rest.iter().map(|l| l.abs()).sum();
        ((*top - T::one()).abs() <= tol && residual <= tol)
            .then(|| eig.vector(eig.values.len() - 1))
    }

    /// Clamps negative eigenvalues to zero and renormalises the trace.
    pub fn project_psd(&self) -> Self {
        let eig = self.matrix.eigh();
        let kept: T = eig.values.iter().map(|&l| l.max(T::zero())).sum();
        let matrix = eig.rebuild(|l| l.max(T::zero()) / kept);
        Self {
            n_qubits: self.n_qubits,
            matrix: matrix.hermitian_part(),
        }
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::Argument(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok((&self.matrix - &other.matrix).max_abs())
    }
}

/// `ρ = |ψ⟩⟨ψ|` for a pure state.
pub fn theoretical_density<T: Real>(state: &StateVector<T>) -> DensityMatrix<T> {
    DensityMatrix::pure(state)
}
