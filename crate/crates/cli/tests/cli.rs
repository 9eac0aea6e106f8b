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

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    cli_env(args, None)
}

fn cli_env(args: &[&str], seed_env: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperteleport"));
    cmd.args(args).env_remove("HYPERTELEPORT_SEED");
    if let Some(s) = seed_env {
        cmd.env("HYPERTELEPORT_SEED", s);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = cli(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    v
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reference_fidelities_from_fixtures() {
    let v = json(&[
        "fidelity",
        path(&fixture("target_single.json")),
        path(&fixture("measured_single.json")),
    ]);
    assert_eq!(v["outputs"]["rounded"], "0.7228");
    assert!((f(&v["outputs"]["fidelity"]) - 0.7228).abs() <= 0.0005);
    let v = json(&[
        "fidelity",
        path(&fixture("target_pair.json")),
        path(&fixture("measured_pair.json")),
    ]);
    assert_eq!(v["outputs"]["rounded"], "0.5298");
    assert_eq!(v["outputs"]["method"], "pure_state");
    let v = json(&[
        "fidelity",
        path(&fixture("target_single.json")),
        path(&fixture("target_single.json")),
    ]);
    assert_eq!(v["outputs"]["rounded"], "1.0000");
}

#[test]
fn fidelity_prints_four_decimals() {
    let r = cli(&[
        "fidelity",
        path(&fixture("target_single.json")),
        path(&fixture("measured_single.json")),
    ]);
    assert!(r.stderr.starts_with("F = 0.7228 "), "{}", r.stderr);
}

#[test]
fn fidelity_dimension_mismatch_is_an_input_error() {
    let r = cli(&[
        "fidelity",
        path(&fixture("target_single.json")),
        path(&fixture("measured_pair.json")),
    ]);
    assert_eq!(r.code, 2);
}

fn amplitudes(v: &Value) -> Vec<(f64, f64)> {
    v["outputs"]["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (f(&p[0]), f(&p[1])))
        .collect()
}

fn assert_amplitudes(got: &[(f64, f64)], want: &[f64]) {
    assert_eq!(got.len(), want.len());
    for (i, ((re, im), w)) in got.iter().zip(want).enumerate() {
        assert!(
            (re - w).abs() < 1e-12 && im.abs() < 1e-12,
            "index {i}: {re}+{im}i vs {w}"
        );
    }
}

#[test]
fn channels() {
    let v = json(&["channel", "--kind", "3q"]);
    assert_amplitudes(&amplitudes(&v), &[0.5, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.5]);
    let kets: Vec<&str> = v["outputs"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["ket"].as_str().unwrap())
        .collect();
    assert_eq!(kets, ["000", "010", "101", "111"]);

    let v = json(&["channel", "--kind", "4q"]);
    let mut want = vec![0.0; 16];
    for k in [0b0000, 0b0101, 0b1010, 0b1111] {
        want[k] = 0.5;
    }
    assert_amplitudes(&amplitudes(&v), &want);

    let v = json(&[
        "channel",
        "--hypergraph",
        path(&fixture("triangle_hypergraph.json")),
    ]);
    let a = 1.0 / (2.0 * 2f64.sqrt());
    assert_amplitudes(&amplitudes(&v), &[a, a, a, a, a, a, a, -a]);

    let v = json(&[
        "channel",
        "--hypergraph",
        path(&fixture("chain_hypergraph.json")),
    ]);
    let mut want = vec![0.25; 16];
    want[0b0111] = -0.25;
    want[0b1110] = -0.25;
    assert_amplitudes(&amplitudes(&v), &want);
}

#[test]
fn malformed_hypergraphs_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("a.json", "{\"n\": 3, \"edges\": [[0, 7]]}"),
        ("b.json", "{\"n\": 3"),
        ("c.json", "{\"n\":2,\"edges\":[[]]}"),
    ] {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let r = cli(&["channel", "--hypergraph", path(&p)]);
        assert_eq!(r.code, 2, "{name}: {}", r.stderr);
        assert!(r.stderr.contains("error"), "{}", r.stderr);
    }
    assert_eq!(
        cli(&["channel", "--hypergraph", "/nonexistent/h.json"]).code,
        2
    );
}

fn assert_uniform(hist: &Value, keys: usize, shots: f64) {
    let counts = hist["counts"].as_object().unwrap();
    assert_eq!(counts.len(), keys);
    let p = 1.0 / keys as f64;
    let sigma = (p * (1.0 - p) / shots).sqrt();
    for (k, c) in counts {
        let freq = f(c) / shots;
        assert!((freq - p).abs() <= 4.0 * sigma, "{k}: {freq}");
    }
}

#[test]
fn ideal_teleport_histograms() {
    let v = json(&["teleport", "--u3", "pi/2,0,0", "--seed", "11"]);
    assert_eq!(v["outputs"]["histogram"]["shots"], 8192);
    assert_uniform(&v["outputs"]["histogram"], 4, 8192.0);
    let v = json(&[
        "teleport",
        "--message",
        path(&fixture("uniform_two.json")),
        "--seed",
        "11",
    ]);
    assert_uniform(&v["outputs"]["histogram"], 16, 8192.0);
    assert_eq!(v["outputs"]["branches"].as_array().unwrap().len(), 16);
}

#[test]
fn basis_message_teleports_perfectly() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    std::fs::write(&p, r#"{"alpha": [1, 0], "beta": [0, 0]}"#).unwrap();
    let v = json(&["teleport", "--message", path(&p), "--shots", "100"]);
    assert!((f(&v["outputs"]["min_branch_fidelity"]) - 1.0).abs() < 1e-12);
    assert_eq!(v["outputs"]["branches"][0]["correction"], "I");
    assert_eq!(v["outputs"]["branches"][3]["correction"], "ZX");
}

#[test]
fn unnormalized_message_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    std::fs::write(&p, r#"{"alpha": [1, 0], "beta": [1, 0]}"#).unwrap();
    let r = cli(&["teleport", "--message", path(&p)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("normalized"), "{}", r.stderr);
}

fn density(v: &Value) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let m = |key: &str| -> Vec<Vec<f64>> {
        v["outputs"]["density"][key]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(f).collect())
            .collect()
    };
    (m("re"), m("im"))
}

#[test]
fn exact_tomography_of_teleported_messages() {
    let v = json(&["tomo", "--mode", "exact", "--u3", "pi/2,0,0"]);
    let (re, im) = density(&v);
    for row in re {
        for x in row {
            assert!((x - 0.5).abs() < 1e-12);
        }
    }
    assert!(im.iter().flatten().all(|x| x.abs() < 1e-12));

    let v = json(&["tomo", "--mode", "exact", "--protocol", "two"]);
    let (re, im) = density(&v);
    assert_eq!(re.len(), 4);
    assert!(re.iter().flatten().all(|x| (x - 0.25).abs() < 1e-12));
    assert!(im.iter().flatten().all(|x| x.abs() < 1e-12));
    assert!((f(&v["outputs"]["fidelity_to_target"]) - 1.0).abs() < 1e-10);
}

#[test]
fn sampled_tomography_of_a_state_file() {
    let v = json(&[
        "tomo",
        "--state",
        path(&fixture("zero_state.json")),
        "--seed",
        "5",
    ]);
    let (re, _) = density(&v);
    assert!((re[0][0] - 1.0).abs() < 1e-12);
    assert!(re[1][1].abs() < 1e-12);
    assert!(re[0][1].abs() < 0.05);
    assert_eq!(v["outputs"]["histograms"].as_object().unwrap().len(), 3);
}

#[test]
fn exact_mode_with_noise_is_rejected() {
    let r = cli(&[
        "tomo",
        "--mode",
        "exact",
        "--noise",
        path(&fixture("noise.json")),
    ]);
    assert_eq!(r.code, 2, "{}", r.stderr);
}

fn write_json(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn compare_histograms() {
    let dir = tempfile::tempdir().unwrap();
    let uniform = write_json(
        dir.path(),
        "u.json",
        r#"{"n_qubits":3,"counts":{"000":1,"001":1,"010":1,"011":1},"shots":4,"seed":0}"#,
    );
    let point = write_json(
        dir.path(),
        "p.json",
        r#"{"n_qubits":3,"counts":{"000":10},"shots":10,"seed":0}"#,
    );
    let v = json(&["compare", path(&uniform), path(&uniform)]);
    assert_eq!(f(&v["outputs"]["total_variation"]), 0.0);
    let v = json(&["compare", path(&uniform), path(&point)]);
    assert!((f(&v["outputs"]["total_variation"]) - 0.75).abs() < 1e-12);
    assert!((f(&v["outputs"]["deltas"]["000"]) - 0.75).abs() < 1e-12);

    let two = write_json(
        dir.path(),
        "t.json",
        r#"{"n_qubits":2,"counts":{"00":1},"shots":1,"seed":0}"#,
    );
    assert_eq!(cli(&["compare", path(&uniform), path(&two)]).code, 2);
    let broken = write_json(
        dir.path(),
        "b.json",
        r#"{"n_qubits":3,"counts":{"000":3},"shots":4,"seed":0}"#,
    );
    assert_eq!(cli(&["compare", path(&uniform), path(&broken)]).code, 2);
}

#[test]
fn ideal_and_noisy_teleport_histograms_differ() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = dir.path().join("ideal.json");
    let noisy = dir.path().join("noisy.json");
    assert_eq!(
        cli(&["teleport", "--seed", "21", "--out", path(&ideal)]).code,
        0
    );
    let noise = write_json(
        dir.path(),
        "n.json",
        r#"{"gate_error":0.05,"readout_flip":0.0,"seed":21}"#,
    );
    assert_eq!(
        cli(&["teleport", "--noise", path(&noise), "--out", path(&noisy)]).code,
        0
    );
    let v = json(&["compare", path(&ideal), path(&noisy)]);
    let tvd = f(&v["outputs"]["total_variation"]);
    assert!(tvd > 0.0);
    // Noisy runs leak into outcomes with a₂ = 1, which the ideal protocol never produces.
    let leaked: f64 = v["outputs"]["deltas"]
        .as_object()
        .unwrap()
        .iter()
        .filter(|(k, _)| k.ends_with('1'))
        .map(|(_, d)| f(d))
        .sum();
    assert!(leaked > 0.0);
}

#[test]
fn seed_resolution_order() {
    let from_flag = cli_env(&["teleport", "--seed", "9"], Some("4"));
    let from_env = cli_env(&["teleport"], Some("9"));
    assert_eq!(from_flag.code, 0);
    assert_eq!(from_flag.stdout, from_env.stdout);
    let v: Value = serde_json::from_str(&from_env.stdout).unwrap();
    assert_eq!(v["seed"], 9);

    let noise = fixture("noise.json");
    let v: Value =
        serde_json::from_str(&cli(&["teleport", "--noise", path(&noise)]).stdout).unwrap();
    assert_eq!(v["seed"], 7);
    let v: Value = serde_json::from_str(&cli(&["teleport"]).stdout).unwrap();
    assert_eq!(v["seed"], 0);
    assert_eq!(cli_env(&["teleport"], Some("not-a-number")).code, 2);
}

#[test]
fn outputs_are_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let noise = fixture("noise.json");
    let runs: [&[&str]; 3] = [
        &["teleport", "--protocol", "two", "--noise", path(&noise)],
        &["tomo", "--seed", "3"],
        &[
            "sweep", "--grid", "0,0.1", "--shots", "512", "--format", "csv", "--seed", "2",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("{i}a"));
        let b = dir.path().join(format!("{i}b"));
        for p in [&a, &b] {
            let mut full = args.to_vec();
            full.extend(["--out", path(p)]);
            assert_eq!(cli(&full).code, 0);
        }
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{args:?}"
        );
    }
}

#[test]
fn csv_outputs() {
    let r = cli(&["teleport", "--format", "csv", "--seed", "1"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("outcome,count,frequency"));
    assert_eq!(lines.count(), 4);

    let r = cli(&[
        "sweep", "--grid", "0,0.2", "--shots", "256", "--format", "csv",
    ]);
    assert_eq!(r.stdout.lines().next(), Some("gate_error_prob,fidelity"));
    assert_eq!(r.stdout.lines().count(), 3);

    assert_eq!(cli(&["channel", "--format", "csv"]).code, 2);
    assert_eq!(cli(&["tomo", "--format", "csv"]).code, 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cli(&["bogus"]).code, 2);
    assert_eq!(cli(&["teleport", "--shots", "0"]).code, 2);
    assert_eq!(cli(&["teleport", "--u3", "pi/2"]).code, 2);
    assert_eq!(
        cli(&["teleport", "--protocol", "two", "--u3", "1,0"]).code,
        2
    );
    assert_eq!(cli(&["sweep", "--grid", "0.2,0.1"]).code, 2);
    assert_eq!(cli(&["sweep", "--grid", "1.5"]).code, 2);
}

#[test]
fn envelopes_parse_back_into_library_types() {
    use hyperteleport_cli::ResultEnvelope;
    for args in [
        vec!["channel", "--kind", "4q"],
        vec!["teleport", "--shots", "64"],
        vec!["tomo", "--shots", "64"],
        vec!["sweep", "--grid", "0", "--shots", "64"],
    ] {
        let r = cli(&args);
        let env: ResultEnvelope = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(env.to_json(), r.stdout, "{args:?}");
    }
}
