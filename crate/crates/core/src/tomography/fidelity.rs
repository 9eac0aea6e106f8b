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
use serde::{Deserialize, Serialize};

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityMethod {
    /// `√⟨ψ|σ|ψ⟩` for a rank-1 reference.
    PureState,
    /// `Tr √(√ρ σ √ρ)` via two Hermitian eigendecompositions.
    Eigendecomposition,
}

/// Fidelity value together with the positivity diagnostics behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport<T: Real> {
    pub value: T,
    pub method: FidelityMethod,
    /// Set when the inner matrix had an eigenvalue below `-Real::loose_tol()` that
    /// was clamped to zero.
    pub clamped: bool,
    /// Sum of the magnitudes of clamped negative eigenvalues.
    pub clamped_mass: T,
    /// Smallest eigenvalue of the second argument; negative for non-physical
    /// reconstructions.
    pub min_eigenvalue_e: T,
}

fn check_dims<T: Real>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Argument(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Uhlmann fidelity `F(ρ_t, ρ_e) = Tr √(√ρ_t ρ_e √ρ_t)`.
///
/// Uses the pure-state form when `rho_t` is rank 1 within `Real::loose_tol()`, the
/// general eigendecomposition otherwise.
pub fn fidelity<T: Real>(
    rho_t: &DensityMatrix<T>,
    rho_e: &DensityMatrix<T>,
) -> Result<FidelityReport<T>> {
    check_dims(rho_t, rho_e)?;
    match rho_t.as_pure(T::loose_tol()) {
        Some(psi) => fidelity_pure(&psi, rho_e),
        None => fidelity_general(rho_t, rho_e),
    }
}

/// `√⟨ψ|ρ_e|ψ⟩`
pub fn fidelity_pure<T: Real>(
    psi: &[Complex<T>],
    rho_e: &DensityMatrix<T>,
) -> Result<FidelityReport<T>> {
    if psi.len() != rho_e.dim() {
        return Err(Error::Argument(format!(
            "dimension mismatch: {} vs {}",
            psi.len(),
            rho_e.dim()
        )));
    }
    let overlap = rho_e.matrix().expectation(psi).re;
    let clamped_mass = (-overlap).max(T::zero());
    Ok(FidelityReport {
        value: overlap.max(T::zero()).sqrt(),
        method: FidelityMethod::PureState,
        clamped: overlap < -T::loose_tol(),
        clamped_mass,
        min_eigenvalue_e: rho_e.min_eigenvalue(),
    })
}

/// Square root with eigenvalues within `Real::tol()` of zero treated as zero, so
/// roundoff in a null space does not surface as `√ε`.
fn chopped_sqrt<T: Real>(x: T) -> T {
    if x <= T::tol() {
        T::zero()
    } else {
        x.sqrt()
    }
}

/// Eigendecomposition route, valid for any positive semidefinite `rho_t`.
pub fn fidelity_general<T: Real>(
    rho_t: &DensityMatrix<T>,
    rho_e: &DensityMatrix<T>,
) -> Result<FidelityReport<T>> {
    check_dims(rho_t, rho_e)?;
    let sqrt_t = rho_t.matrix().map_spectrum(chopped_sqrt);
    let inner = &(&sqrt_t * rho_e.matrix()) * &sqrt_t;
    let spectrum = inner.eigh().values;
    let clamped_mass: T = spectrum
        .iter()
        .filter(|&&m| m < -T::tol())
        .map(|m| -*m)
        .sum();
    let value = spectrum.iter().map(|&m| chopped_sqrt(m)).sum();
    Ok(FidelityReport {
        value,
        method: FidelityMethod::Eigendecomposition,
        clamped: spectrum.iter().any(|&m| m < -T::loose_tol()),
        clamped_mass,
        min_eigenvalue_e: rho_e.min_eigenvalue(),
    })
}
