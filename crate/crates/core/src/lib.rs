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

//! Statevector simulation of quantum teleportation through hypergraph-state
//! channels, with shot-based state tomography and a stochastic Pauli noise model.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar for the common case.
//!
//! ```
//! use hyperteleport_core::{teleport_single, Mode, SingleQubitMessage};
//!
//! let msg = SingleQubitMessage::<f64>::from_u3(1.0, 0.5);
//! for branch in teleport_single(&msg, Mode::EnumerateAll).unwrap() {
//!     assert!((branch.probability - 0.25).abs() < 1e-12);
//! }
//! ```

pub mod error;
pub mod hypergraph;
pub mod linalg;
pub mod noise;
pub mod rng;
pub mod scalar;
pub mod statevec;
pub mod teleport;
pub mod tomography;

pub use error::{Error, Result};
pub use hypergraph::{
    build_channel_3q, build_channel_4q, build_hypergraph_state, sign_oracle, ChannelState,
    Hypergraph,
};
pub use linalg::CMatrix;
pub use noise::{fidelity_vs_noise, noisy_run, NoiseModel, SweepConfig, SweepRow};
pub use scalar::Real;
pub use statevec::{sample_shots, Circuit, Gate, ShotHistogram, StateVector};
pub use teleport::{
    correction_lookup, teleport, teleport_single, teleport_two, trace_single, trace_two,
    CorrectionRule, Message, Mode, PauliCorrection, Protocol, ProtocolTrace, SingleQubitMessage,
    TeleportOutcome, TwoQubitMessage,
};
pub use tomography::{
    fidelity, measurement_plan, reconstruct_density, tomograph, tomograph_state, DensityMatrix,
    FidelityReport, StokesTensor, TomographyMode,
};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;

pub type State = StateVector<f64>;
pub type Density = DensityMatrix<f64>;
pub type Stokes = StokesTensor<f64>;
pub type Matrix = CMatrix<f64>;
pub type QubitMessage = SingleQubitMessage<f64>;
pub type PairMessage = TwoQubitMessage<f64>;

pub type State32 = StateVector<f32>;
pub type Density32 = DensityMatrix<f32>;
pub type Stokes32 = StokesTensor<f32>;
pub type Matrix32 = CMatrix<f32>;
