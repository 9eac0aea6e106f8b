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

//! Argument definitions and subcommand implementations.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperteleport_core::teleport::{alice_histogram, deferred_circuit};
use hyperteleport_core::tomography::theoretical_density;
use hyperteleport_core::{
    build_channel_3q, build_channel_4q, build_hypergraph_state, fidelity, fidelity_vs_noise,
    teleport, tomograph, Circuit, Hypergraph, Message, Mode, NoiseModel, PairMessage, Protocol,
    QubitMessage, ShotHistogram, State, SweepConfig, TomographyMode,
};
use serde_json::Value;

use crate::envelope::{
    AmplitudeTerm, BranchSummary, ChannelOutput, CompareOutput, DensityOutput, FidelityOutput,
    Outputs, ResultEnvelope, SweepOutput, TeleportOutput,
};
use crate::error::{CliError, CliResult};
use crate::schema::{read_json, DensityJson, MessageJson, StateFile};

pub const DEFAULT_SHOTS: usize = 8192;
pub const SEED_ENV: &str = "HYPERTELEPORT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "hyperteleport",
    version,
    about = "Hypergraph-state teleportation simulator"
)]
pub struct Cli {
    /// RNG seed. Falls back to HYPERTELEPORT_SEED, then the noise file's seed, then 0.
    #[arg(long, global = true, env = SEED_ENV)]
    pub seed: Option<u64>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Histograms and sweep tables only.
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a teleportation channel or a hypergraph state.
    Channel(ChannelArgs),
    /// Teleport a message and record Alice's outcomes.
    Teleport(TeleportArgs),
    /// Tomographically reconstruct a teleported message or a stored state.
    Tomo(TomoArgs),
    /// Fidelity between two stored density matrices.
    Fidelity(FidelityArgs),
    /// Total variation distance between two histograms.
    Compare(CompareArgs),
    /// Pipeline fidelity over a grid of gate error probabilities.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelKind {
    #[value(name = "3q")]
    ThreeQubit,
    #[value(name = "4q")]
    FourQubit,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum, default_value_t = ChannelKind::ThreeQubit, conflicts_with = "hypergraph")]
    pub kind: ChannelKind,

    /// Hypergraph JSON such as {"n":4,"edges":[[0,1,2],[1,2,3]]}.
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Single,
    Two,
}

impl From<ProtocolArg> for Protocol {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Single => Protocol::Single,
            ProtocolArg::Two => Protocol::Two,
        }
    }
}

#[derive(Debug, Args)]
pub struct MessageArgs {
    /// Protocol; inferred from --message or --u3 when omitted, else single.
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolArg>,

    /// Message JSON: {"alpha":[re,im],"beta":[re,im]} plus gamma and delta for two qubits.
    #[arg(long, conflicts_with = "u3")]
    pub message: Option<PathBuf>,

    /// U3 preparation angles THETA,PHI[,LAMBDA] applied to |0⟩; give twice for two qubits.
    /// Angles accept numbers or multiples of pi such as pi/2 or -3pi/4.
    #[arg(long, value_name = "THETA,PHI[,LAMBDA]", allow_hyphen_values = true)]
    pub u3: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    #[command(flatten)]
    pub message: MessageArgs,

    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    pub shots: usize,

    /// Noise JSON: {"gate_error":0.05,"readout_flip":0.02,"seed":7}.
    #[arg(long)]
    pub noise: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    #[command(flatten)]
    pub message: MessageArgs,

    /// Reconstruct this state file instead of a teleported message.
    #[arg(long, conflicts_with_all = ["protocol", "message", "u3"])]
    pub state: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ModeArg::Sampled)]
    pub mode: ModeArg,

    /// Shots per measurement setting.
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    pub shots: usize,

    /// Noise JSON; sampled mode only.
    #[arg(long)]
    pub noise: Option<PathBuf>,

    /// Clamp negative eigenvalues of the reconstruction and renormalise.
    #[arg(long)]
    pub project_psd: bool,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Reference (theoretical) density matrix JSON.
    pub rho_t: PathBuf,
    /// Reconstructed (experimental) density matrix JSON.
    pub rho_e: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Histogram JSON, or a result envelope carrying one.
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub message: MessageArgs,

    /// Gate error probabilities, ascending.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.04,0.08,0.12,0.16,0.2"
    )]
    pub grid: Vec<f64>,

    #[arg(long, default_value_t = 0.0)]
    pub readout_flip: f64,

    /// Shots per tomography setting.
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    pub shots: usize,

    /// Repetitions averaged at each grid point.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

/// Parses `1.5`, `pi`, `-pi/2`, `3pi/4`, `2*pi`.
pub fn parse_angle(text: &str) -> CliResult<f64> {
    let t = text.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || CliError::Usage(format!("cannot parse angle {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let coef = num
        .trim()
        .strip_suffix("pi")
        .ok_or_else(bad)?
        .trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * std::f64::consts::PI / den)
}

fn parse_u3(text: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(CliError::Usage(format!(
            "--u3 expects THETA,PHI[,LAMBDA], got {text:?}"
        )));
    }
    for p in &parts[2..] {
        parse_angle(p)?;
    }
    Ok((parse_angle(parts[0])?, parse_angle(parts[1])?))
}

impl MessageArgs {
    pub fn resolve(&self) -> CliResult<Message<f64>> {
        let msg = if let Some(path) = &self.message {
            read_json::<MessageJson>(path)?.to_message()?
        } else if !self.u3.is_empty() {
            let angles = self
                .u3
                .iter()
                .map(|s| parse_u3(s))
                .collect::<CliResult<Vec<_>>>()?;
            match angles.as_slice() {
                [(t, p)] => Message::Single(QubitMessage::from_u3(*t, *p)),
                [a, b] => Message::Two(PairMessage::from_u3_pair(*a, *b)),
                _ => return Err(CliError::Usage("--u3 may be given once or twice".into())),
            }
        } else {
            let h = 0.5;
            let z = |x: f64| hyperteleport_core::Complex64::new(x, 0.0);
            match self.protocol.unwrap_or(ProtocolArg::Single) {
                ProtocolArg::Single => {
                    Message::Single(QubitMessage::from_u3(std::f64::consts::FRAC_PI_2, 0.0))
                }
                ProtocolArg::Two => Message::Two(PairMessage::new(z(h), z(h), z(h), z(h))?),
            }
        };
        if let Some(p) = self.protocol {
            if Protocol::from(p) != msg.protocol() {
                return Err(CliError::Usage(format!(
                    "message does not match protocol {p:?}"
                )));
            }
        }
        Ok(msg)
    }
}

fn protocol_name(p: Protocol) -> &'static str {
    match p {
        Protocol::Single => "single",
        Protocol::Two => "two",
    }
}

fn load_noise(path: &Option<PathBuf>) -> CliResult<Option<NoiseModel>> {
    path.as_ref()
        .map(|p| {
            let nm: NoiseModel = read_json(p)?;
            nm.validate()?;
            Ok(nm)
        })
        .transpose()
}

/// Flag or environment (both handled by clap), then the noise file, then 0.
pub fn resolve_seed(flag: Option<u64>, noise: Option<&NoiseModel>) -> u64 {
    flag.or(noise.map(|n| n.seed)).unwrap_or(0)
}

fn check_shots(shots: usize) -> CliResult<()> {
    if shots == 0 {
        return Err(CliError::Usage("--shots must be positive".into()));
    }
    Ok(())
}

type Params = BTreeMap<String, Value>;

fn param(params: &mut Params, key: &str, value: impl Into<Value>) {
    params.insert(key.to_string(), value.into());
}

fn message_param(params: &mut Params, msg: &Message<f64>) {
    param(params, "protocol", protocol_name(msg.protocol()));
    param(
        params,
        "message",
        serde_json::to_value(MessageJson::from(msg)).expect("plain data"),
    );
}

fn noise_param(params: &mut Params, noise: Option<&NoiseModel>) {
    if let Some(nm) = noise {
        param(
            params,
            "noise",
            serde_json::to_value(nm).expect("plain data"),
        );
    }
}

/// Runs a parsed command line and returns its envelope.
pub fn run(cli: &Cli) -> CliResult<ResultEnvelope> {
    let csv_ok = matches!(cli.command, Command::Teleport(_) | Command::Sweep(_));
    if cli.format == Format::Csv && !csv_ok {
        return Err(CliError::Usage(
            "csv output is only available for teleport histograms and sweep tables".into(),
        ));
    }
    match &cli.command {
        Command::Channel(a) => channel(a, cli.seed),
        Command::Teleport(a) => teleport_cmd(a, cli.seed),
        Command::Tomo(a) => tomo(a, cli.seed),
        Command::Fidelity(a) => fidelity_cmd(a, cli.seed),
        Command::Compare(a) => compare(a, cli.seed),
        Command::Sweep(a) => sweep(a, cli.seed),
    }
}

fn channel(args: &ChannelArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    let mut params = Params::new();
    let (state, hypergraph, alice, bob) = match &args.hypergraph {
        Some(path) => {
            let h: Hypergraph = read_json(path)?;
            param(&mut params, "hypergraph", path.display().to_string());
            let state: State = build_hypergraph_state(&h)?;
            (state, h, None, None)
        }
        None => {
            let (ch, h, name) = match args.kind {
                ChannelKind::ThreeQubit => {
                    (build_channel_3q()?, Hypergraph::three_uniform_3q(), "3q")
                }
                ChannelKind::FourQubit => {
                    (build_channel_4q()?, Hypergraph::three_uniform_4q(), "4q")
                }
            };
            param(&mut params, "kind", name);
            (ch.state, h, Some(ch.alice_qubits), Some(ch.bob_qubits))
        }
    };
    let state = state.phase_fixed();
    let terms = state
        .terms()
        .into_iter()
        .map(|(ket, a)| AmplitudeTerm {
            ket,
            amplitude: a.into(),
        })
        .collect();
    let outputs = Outputs::Channel(ChannelOutput {
        n_qubits: state.n_qubits(),
        hyperedges: hypergraph.hyperedges().map(<[usize]>::to_vec).collect(),
        alice_qubits: alice,
        bob_qubits: bob,
        amplitudes: state.amplitudes().iter().map(|&a| a.into()).collect(),
        terms,
    });
    Ok(ResultEnvelope::new(
        "channel",
        params,
        resolve_seed(seed, None),
        outputs,
    ))
}

fn teleport_cmd(args: &TeleportArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    check_shots(args.shots)?;
    let msg = args.message.resolve()?;
    let noise = load_noise(&args.noise)?;
    let seed = resolve_seed(seed, noise.as_ref());
    let target = msg.state()?;

    let branches = teleport(&msg, Mode::EnumerateAll)?
        .into_iter()
        .map(|o| {
            Ok(BranchSummary {
                fidelity: o.bob_state_corrected.overlap(&target)?,
                correction: o.applied_correction.to_string(),
                alice_bits: o.alice_bits,
                probability: o.probability,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let min_branch_fidelity = branches
        .iter()
        .map(|b| b.fidelity)
        .fold(f64::INFINITY, f64::min);
    let histogram = alice_histogram(&msg, args.shots, seed, noise.as_ref())?;

    let mut params = Params::new();
    message_param(&mut params, &msg);
    param(&mut params, "shots", args.shots);
    noise_param(&mut params, noise.as_ref());
    let outputs = Outputs::Teleport(TeleportOutput {
        protocol: protocol_name(msg.protocol()).into(),
        message: MessageJson::from(&msg),
        histogram,
        branches,
        min_branch_fidelity,
    });
    Ok(ResultEnvelope::new("teleport", params, seed, outputs))
}

fn tomo(args: &TomoArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    check_shots(args.shots)?;
    let noise = load_noise(&args.noise)?;
    let seed = resolve_seed(seed, noise.as_ref());
    let mut params = Params::new();

    let (circuit, qubits, target) = match &args.state {
        Some(path) => {
            let state = read_json::<StateFile>(path)?.to_state()?;
            param(&mut params, "state", path.display().to_string());
            let qubits: Vec<usize> = (0..state.n_qubits()).collect();
            (Circuit::from_state(state.clone()), qubits, state)
        }
        None => {
            let msg = args.message.resolve()?;
            message_param(&mut params, &msg);
            (
                deferred_circuit(&msg)?,
                msg.protocol().bob_qubits(),
                msg.state()?,
            )
        }
    };
    let mode = match args.mode {
        ModeArg::Exact => TomographyMode::Exact,
        ModeArg::Sampled => TomographyMode::Sampled {
            shots: args.shots,
            seed,
        },
    };
    param(
        &mut params,
        "mode",
        if args.mode == ModeArg::Exact {
            "exact"
        } else {
            "sampled"
        },
    );
    if args.mode == ModeArg::Sampled {
        param(&mut params, "shots", args.shots);
    }
    noise_param(&mut params, noise.as_ref());
    param(&mut params, "project_psd", args.project_psd);

    let result = tomograph(&circuit, &qubits, mode, noise.as_ref())?;
    let density = if args.project_psd {
        result.density.project_psd()
    } else {
        result.density
    };
    let f = fidelity(&theoretical_density(&target), &density)?.value;
    let outputs = Outputs::Density(DensityOutput {
        density: DensityJson::from(&density),
        stokes: result.stokes.values().clone(),
        fidelity_to_target: Some(f),
        histograms: result.histograms,
    });
    Ok(ResultEnvelope::new("tomo", params, seed, outputs))
}

fn fidelity_cmd(args: &FidelityArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    let rho_t = read_json::<DensityJson>(&args.rho_t)?.to_density()?;
    let rho_e = read_json::<DensityJson>(&args.rho_e)?.to_density()?;
    if rho_t.dim() != rho_e.dim() {
        return Err(CliError::Input(format!(
            "dimension mismatch: {} vs {}",
            rho_t.dim(),
            rho_e.dim()
        )));
    }
    let report = fidelity(&rho_t, &rho_e)?;
    let mut params = Params::new();
    param(&mut params, "rho_t", args.rho_t.display().to_string());
    param(&mut params, "rho_e", args.rho_e.display().to_string());
    let outputs = Outputs::Fidelity(FidelityOutput {
        fidelity: report.value,
        rounded: format!("{:.4}", report.value),
        method: report.method,
        clamped: report.clamped,
        clamped_mass: report.clamped_mass,
        min_eigenvalue_e: report.min_eigenvalue_e,
    });
    Ok(ResultEnvelope::new(
        "fidelity",
        params,
        resolve_seed(seed, None),
        outputs,
    ))
}

/// Reads a bare histogram or pulls one out of a teleport envelope.
pub fn load_histogram(path: &std::path::Path) -> CliResult<ShotHistogram> {
    let value: Value = read_json(path)?;
    let hist = if value.get("schema_version").is_some() {
        let env: ResultEnvelope = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        match env.outputs {
            Outputs::Teleport(t) => t.histogram,
            _ => {
                return Err(CliError::Input(format!(
                    "{}: envelope carries no histogram",
                    path.display()
                )))
            }
        }
    } else {
        serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    hist.validate()?;
    Ok(hist)
}

fn compare(args: &CompareArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    let a = load_histogram(&args.a)?;
    let b = load_histogram(&args.b)?;
    let mut params = Params::new();
    param(&mut params, "a", args.a.display().to_string());
    param(&mut params, "b", args.b.display().to_string());
    let outputs = Outputs::Compare(CompareOutput {
        n_qubits: a.n_qubits,
        total_variation: a.total_variation(&b)?,
        deltas: a.deltas(&b)?,
    });
    Ok(ResultEnvelope::new(
        "compare",
        params,
        resolve_seed(seed, None),
        outputs,
    ))
}

fn sweep(args: &SweepArgs, seed: Option<u64>) -> CliResult<ResultEnvelope> {
    check_shots(args.shots)?;
    let msg = args.message.resolve()?;
    let seed = resolve_seed(seed, None);
    for &p in args.grid.iter().chain([&args.readout_flip]) {
        NoiseModel::new(p, 0.0, 0)?;
    }
    let config = SweepConfig {
        grid: args.grid.clone(),
        readout_flip_prob: args.readout_flip,
        shots: args.shots,
        seed,
        trials: args.trials,
    };
    let rows = fidelity_vs_noise(&msg, &config)?;
    let mut params = Params::new();
    message_param(&mut params, &msg);
    param(&mut params, "grid", args.grid.clone());
    param(&mut params, "readout_flip", args.readout_flip);
    param(&mut params, "shots", args.shots);
    param(&mut params, "trials", args.trials);
    let outputs = Outputs::Sweep(SweepOutput {
        protocol: protocol_name(msg.protocol()).into(),
        message: MessageJson::from(&msg),
        readout_flip: args.readout_flip,
        shots: args.shots,
        trials: args.trials,
        rows,
    });
    Ok(ResultEnvelope::new("sweep", params, seed, outputs))
}
