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

#![allow(clippy::needless_range_loop)]

mod common;

use common::{c, max_gap, trailing_density};
use hyperteleport_core::statevec::{bit_string, Gate};
use hyperteleport_core::{
    build_channel_3q, build_channel_4q, build_hypergraph_state, sign_oracle, Hypergraph, State,
};
use proptest::prelude::*;

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (1usize..=8).prop_flat_map(|n| {
        let edge = prop::collection::btree_set(0..n, 1..=n);
        prop::collection::vec(edge, 0..10).prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

/// Product over hyperedges of `(-1)^{x_e}`, computed bit by bit.
fn brute_sign(h: &Hypergraph, index: usize) -> f64 {
    let n = h.n_vertices();
    let bits: Vec<bool> = bit_string(index, n).chars().map(|ch| ch == '1').collect();
    h.hyperedges().fold(1.0, |acc, e| {
        if e.iter().all(|&v| bits[v]) {
            -acc
        } else {
            acc
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn amplitudes_follow_the_sign_oracle(h in hypergraph_strategy()) {
        let s: State = build_hypergraph_state(&h).unwrap();
        let n = h.n_vertices();
        let mag = 2f64.powf(-(n as f64) / 2.0);
        for (i, a) in s.amplitudes().iter().enumerate() {
            prop_assert!((a.norm() - mag).abs() < 1e-12);
            prop_assert!(a.im.abs() < 1e-12);
            let sign = sign_oracle(&h, i) as f64;
            prop_assert_eq!(sign, brute_sign(&h, i));
            prop_assert!((a.re - sign * mag).abs() < 1e-12);
        }
    }

    #[test]
    fn multi_controlled_z_is_an_involution(h in hypergraph_strategy()) {
        let s: State = build_hypergraph_state(&h).unwrap();
        for e in h.hyperedges() {
            let g = Gate::multi_z(e).unwrap();
            let mut t = s.clone();
            t.apply(&g).unwrap();
            t.apply(&g).unwrap();
            prop_assert!(max_gap(t.amplitudes(), s.amplitudes()) < 1e-12);
        }
    }
}

fn literal(n: usize, terms: &[(&str, f64)]) -> Vec<num_complex::Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    for (ket, a) in terms {
        v[usize::from_str_radix(ket, 2).unwrap()] = c(*a, 0.0);
    }
    v
}

#[test]
fn three_qubit_channel_is_the_literal_state() {
    let ch = build_channel_3q::<f64>().unwrap();
    let want = literal(3, &[("000", 0.5), ("010", 0.5), ("101", 0.5), ("111", 0.5)]);
    assert!(max_gap(ch.state.phase_fixed().amplitudes(), &want) < 1e-12);
    let kets: Vec<String> = ch.state.terms().into_iter().map(|(k, _)| k).collect();
    assert_eq!(kets, ["000", "010", "101", "111"]);
    assert_eq!(
        (ch.alice_qubits.as_slice(), ch.bob_qubits.as_slice()),
        (&[0, 1][..], &[2][..])
    );
}

#[test]
fn four_qubit_hypergraph_and_channel_are_the_literal_states() {
    let h: State = build_hypergraph_state(&Hypergraph::three_uniform_4q()).unwrap();
    let mut terms: Vec<(String, f64)> = (0..16).map(|i| (bit_string(i, 4), 0.25)).collect();
    for t in terms
        .iter_mut()
        .filter(|t| t.0 == "0111" || t.0 == "1110" || t.0 == "1111")
    {
        t.1 = if t.0 == "1111" { 0.25 } else { -0.25 };
    }
    let borrowed: Vec<(&str, f64)> = terms.iter().map(|(k, a)| (k.as_str(), *a)).collect();
    assert!(max_gap(h.amplitudes(), &literal(4, &borrowed)) < 1e-12);

    let ch = build_channel_4q::<f64>().unwrap();
    let want = literal(
        4,
        &[("0000", 0.5), ("0101", 0.5), ("1010", 0.5), ("1111", 0.5)],
    );
    assert!(max_gap(ch.state.phase_fixed().amplitudes(), &want) < 1e-12);
}

#[test]
fn bob_marginals_are_maximally_mixed() {
    let ch3 = build_channel_3q::<f64>().unwrap();
    let rho = trailing_density(ch3.state.amplitudes(), 1);
    let lib = ch3.state.reduced_density(&ch3.bob_qubits).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { 0.5 } else { 0.0 };
            assert!((rho[i][j] - c(want, 0.0)).norm() < 1e-12);
            assert!((lib.matrix()[(i, j)] - rho[i][j]).norm() < 1e-12);
        }
    }
    let ch4 = build_channel_4q::<f64>().unwrap();
    let rho = trailing_density(ch4.state.amplitudes(), 2);
    let lib = ch4.state.reduced_density(&ch4.bob_qubits).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { 0.25 } else { 0.0 };
            assert!((rho[i][j] - c(want, 0.0)).norm() < 1e-12);
            assert!((lib.matrix()[(i, j)] - rho[i][j]).norm() < 1e-12);
        }
    }
}

#[test]
fn invalid_hypergraphs_are_model_errors() {
    use hyperteleport_core::Error;
    assert!(matches!(
        Hypergraph::new(3, [vec![0, 5]]),
        Err(Error::Model(_))
    ));
    assert!(matches!(
        Hypergraph::new(3, [Vec::<usize>::new()]),
        Err(Error::Model(_))
    ));
    assert!(Hypergraph::new(3, [vec![1]]).is_ok());
}
