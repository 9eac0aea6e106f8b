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

//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Real floating point type the simulator can run on.
///
/// Implemented for `f32` and `f64`. The two tolerances scale the equality
/// checks (normalisation, hermiticity, rank tests) to the precision of the type.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tight tolerance: round-off accumulated over a handful of gate applications.
    fn tol() -> Self;

    /// Loose tolerance: results of iterative routines such as eigensolvers.
    fn loose_tol() -> Self;

    /// Converts an `f64` literal. Never fails for finite input.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tol() -> Self {
        1e-12
    }

    fn loose_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn tol() -> Self {
        1e-5
    }

    fn loose_tol() -> Self {
        1e-4
    }
}
