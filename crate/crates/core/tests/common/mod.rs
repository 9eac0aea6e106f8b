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

//! Naive dense reference simulator and random generators shared by the
//! integration tests. Nothing here calls into the crate's gate kernels.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64 as C;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// `(control qubit, required bit)` pairs plus a 2×2 matrix on `target`.
pub struct RefGate {
    pub controls: Vec<(usize, bool)>,
    pub target: usize,
    pub m: [[C; 2]; 2],
}

pub fn h() -> [[C; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]
}

pub fn x() -> [[C; 2]; 2] {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn z() -> [[C; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn u3(theta: f64, phi: f64, lambda: f64) -> [[C; 2]; 2] {
    let (s, co) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    [
        [c(co, 0.0), -C::from_polar(s, lambda)],
        [C::from_polar(s, phi), C::from_polar(co, phi + lambda)],
    ]
}

pub fn single(target: usize, m: [[C; 2]; 2]) -> RefGate {
    RefGate {
        controls: vec![],
        target,
        m,
    }
}

pub fn controlled(controls: &[usize], target: usize, m: [[C; 2]; 2]) -> RefGate {
    RefGate {
        controls: controls.iter().map(|&q| (q, true)).collect(),
        target,
        m,
    }
}

fn bit(index: usize, n: usize, q: usize) -> bool {
    index >> (n - 1 - q) & 1 == 1
}

/// Full `2^n × 2^n` matrix of a gate, built column by column.
pub fn full_matrix(g: &RefGate, n: usize) -> Vec<Vec<C>> {
    let dim = 1 << n;
    let mut u = vec![vec![c(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        if g.controls.iter().all(|&(q, want)| bit(col, n, q) == want) {
            let t = bit(col, n, g.target) as usize;
            let mask = 1 << (n - 1 - g.target);
            for b in 0..2 {
                let row = if b == 1 { col | mask } else { col & !mask };
                u[row][col] = g.m[b][t];
            }
        } else {
            u[col][col] = c(1.0, 0.0);
        }
    }
    u
}

pub fn mat_vec(u: &[Vec<C>], v: &[C]) -> Vec<C> {
    u.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn run(gates: &[RefGate], n: usize, mut v: Vec<C>) -> Vec<C> {
    for g in gates {
        v = mat_vec(&full_matrix(g, n), &v);
    }
    v
}

pub fn kron(a: &[C], b: &[C]) -> Vec<C> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

pub fn basis(n: usize, index: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[index] = c(1.0, 0.0);
    v
}

/// Reduced density matrix of the trailing `k` qubits.
pub fn trailing_density(v: &[C], k: usize) -> Vec<Vec<C>> {
    let d = 1 << k;
    let mut rho = vec![vec![c(0.0, 0.0); d]; d];
    for block in v.chunks(d) {
        for i in 0..d {
            for j in 0..d {
                rho[i][j] += block[i] * block[j].conj();
            }
        }
    }
    rho
}

pub fn max_gap(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `|⟨a|b⟩|²`
pub fn overlap(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<C>()
        .norm_sqr()
}

pub fn normalize(v: Vec<C>) -> Vec<C> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// Normalised random complex vector of length `2^n`.
pub fn state_strategy(n: usize) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-degenerate", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
        })
        .prop_map(|v| normalize(v.into_iter().map(|(a, b)| c(a, b)).collect()))
}
