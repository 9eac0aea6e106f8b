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

//! Command-line front end for the hyperteleport simulator.

pub mod commands;
pub mod envelope;
pub mod error;
pub mod schema;

use std::io::Write;

use hyperteleport_core::ShotHistogram;

pub use commands::{run, Cli, Format};
pub use envelope::{Outputs, ResultEnvelope, SCHEMA_VERSION};
pub use error::{CliError, CliResult, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK};

fn histogram_csv(h: &ShotHistogram) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(vec![]);
    let fail = |e: csv::Error| CliError::Io("csv".into(), e.to_string());
    w.write_record(["outcome", "count", "frequency"])
        .map_err(fail)?;
    for (key, &count) in &h.counts {
        w.write_record([key.clone(), count.to_string(), h.frequency(key).to_string()])
            .map_err(fail)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Io("csv".into(), e.to_string()))
}

/// Serialises an envelope in the requested format.
pub fn render(env: &ResultEnvelope, format: Format) -> CliResult<Vec<u8>> {
    match (format, &env.outputs) {
        (Format::Json, _) => Ok(env.to_json().into_bytes()),
        (Format::Csv, Outputs::Teleport(t)) => histogram_csv(&t.histogram),
        (Format::Csv, Outputs::Sweep(s)) => {
            let mut w = csv::Writer::from_writer(vec![]);
            let fail = |e: csv::Error| CliError::Io("csv".into(), e.to_string());
            for row in &s.rows {
                w.serialize(row).map_err(fail)?;
            }
            w.into_inner()
                .map_err(|e| CliError::Io("csv".into(), e.to_string()))
        }
        (Format::Csv, _) => Err(CliError::Usage(format!(
            "no csv form for {} output",
            env.command
        ))),
    }
}

/// One human-readable line describing the result.
pub fn summary(env: &ResultEnvelope) -> String {
    match &env.outputs {
        Outputs::Channel(c) => format!(
            "channel: {} qubits, {} nonzero amplitudes",
            c.n_qubits,
            c.terms.len()
        ),
        Outputs::Teleport(t) => format!(
            "teleport ({}): {} shots, {} outcomes, min branch fidelity {:.4}",
            t.protocol,
            t.histogram.shots,
            t.histogram.counts.len(),
            t.min_branch_fidelity
        ),
        Outputs::Density(d) => match d.fidelity_to_target {
            Some(f) => format!(
                "tomo: {}-qubit reconstruction, fidelity to target {f:.4}",
                d.density.n
            ),
            None => format!("tomo: {}-qubit reconstruction", d.density.n),
        },
        Outputs::Fidelity(f) => format!(
            "F = {} ({}; min eigenvalue of rho_e {:.4}; clamped: {})",
            f.rounded,
            serde_json::to_value(f.method)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            f.min_eigenvalue_e,
            if f.clamped {
                format!("yes, mass {:.2e}", f.clamped_mass)
            } else {
                "no".into()
            }
        ),
        Outputs::Compare(c) => format!(
            "compare: TVD {:.4} over {} outcomes",
            c.total_variation,
            c.deltas.len()
        ),
        Outputs::Sweep(s) => format!("sweep ({}): {} grid points", s.protocol, s.rows.len()),
    }
}

/// Runs the command, writes its output and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = run(cli).and_then(|env| {
        let bytes = render(&env, cli.format)?;
        match &cli.out {
            Some(path) => {
                std::fs::write(path, &bytes)
                    .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
                println!("{}", summary(&env));
            }
            None => {
                std::io::stdout()
                    .write_all(&bytes)
                    .map_err(|e| CliError::Io("stdout".into(), e.to_string()))?;
                eprintln!("{}", summary(&env));
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
