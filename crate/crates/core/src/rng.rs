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

//! Deterministic random streams.
//!
//! Every random draw in the crate comes from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! keyed by a 64-bit master seed through `seed_from_u64`. Independent consumers of the
//! same master seed are separated by the ChaCha stream id, which packs a purpose tag
//! into the high 16 bits and a chunk or setting index into the low 48 bits. A given
//! `(seed, purpose, index)` triple therefore always yields the same sequence, no
//! matter how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shots handled by one independent sub-stream. Fixed so that results do not depend
/// on the number of worker threads.
pub const SHOTS_PER_CHUNK: usize = 1024;

/// What a stream is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    /// Born-rule outcome draws.
    Measure = 1,
    /// Stochastic Pauli insertions after gates.
    GateError = 2,
    /// Classical readout bit flips.
    Readout = 3,
    /// Branch selection in sampled teleportation.
    Branch = 4,
    /// Derivation of per-setting seeds in tomography.
    Setting = 5,
    /// Derivation of per-trial seeds in noise sweeps.
    Trial = 6,
}

/// Returns the generator for `(seed, purpose, index)`.
pub fn stream(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    debug_assert!(index < (1 << 48));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 48) | (index & ((1 << 48) - 1)));
    rng
}

/// Derives a child master seed, e.g. one per tomography setting.
pub fn derive_seed(seed: u64, purpose: Purpose, index: u64) -> u64 {
    use rand::RngCore;
    stream(seed, purpose, index).next_u64()
}

/// Splits `shots` into the fixed-size chunks consumed by [`stream`].
pub fn chunks(shots: usize) -> impl Iterator<Item = (u64, usize)> {
    let full = shots / SHOTS_PER_CHUNK;
    let rest = shots % SHOTS_PER_CHUNK;
    (0..full)
        .map(|c| (c as u64, SHOTS_PER_CHUNK))
        .chain((rest > 0).then_some((full as u64, rest)))
}
