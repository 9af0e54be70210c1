// Copyright 2026 The mcdec Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Command-line frontend.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 bad input, 3 verification failure.

pub mod json;
pub mod qasm;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchError, BenchRecord};
use crate::circuit::{qubits, Circuit, Instruction, QubitId};
use crate::decompose::{decompose_circuit, env_flag, AuxMode, DecomposeConfig, DISABLE_OPT_ENV};
use crate::oracle::{self, build_unitary, equiv, equiv_on_aux_zero, reference_cnu};
use crate::par::ExecMode;
use crate::qmat::GateKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mcdec", version, about = "Decompose multi-controlled single-qubit gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose one C^n gate and write the circuit or its counts.
    Decompose(DecomposeArgs),
    /// Decompose one C^n gate and check it against the dense reference.
    Verify(VerifyArgs),
    /// Count CNOTs over a range of program sizes and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuxArg {
    Clean,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Qasm,
    Json,
    Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Grover,
    Prepare,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// x, y, z, h, p, rx, ry or rz.
    #[arg(long, conflicts_with = "matrix")]
    pub gate: Option<String>,
    /// Angle in radians for p/rx/ry/rz.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Row-major unitary, e.g. "0,1;1,0" or "0.7071,0.7071i;0.7071i,0.7071".
    #[arg(long)]
    pub matrix: Option<String>,
    /// Number of controls.
    #[arg(long)]
    pub controls: usize,
    #[arg(long, value_enum, default_value_t = AuxArg::Clean)]
    pub aux: AuxArg,
    /// Ancilla-free baseline (same as the environment toggle).
    #[arg(long)]
    pub no_opt: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub gate: GateArgs,
    #[arg(long, value_enum, default_value_t = Format::Stats)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub gate: GateArgs,
    #[arg(long, default_value_t = oracle::CIRCUIT_TOL)]
    pub tol: f64,
    /// Appends a stray X to the decomposed circuit.
    #[arg(long, hide = true)]
    pub tamper: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub which: Which,
    #[arg(long)]
    pub min: usize,
    #[arg(long)]
    pub max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub no_opt: bool,
    /// Run benchmark points one after another.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn bad(msg: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_BAD_INPUT, message: msg.to_string() }
    }
    fn io(msg: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_IO, message: msg.to_string() }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Io(_) | BenchError::Csv(_) => Failure::io(e),
            other => Failure::bad(other),
        }
    }
}

/// The environment toggle wins over `--no-opt` when set either way.
pub fn optimization_enabled(no_opt_flag: bool) -> bool {
    !env_flag(DISABLE_OPT_ENV).unwrap_or(no_opt_flag)
}

fn config_for(g: &GateArgs) -> DecomposeConfig {
    let mut cfg = DecomposeConfig::resolve(g.no_opt);
    if g.aux == AuxArg::None {
        cfg.aux_mode = AuxMode::NoAux;
        cfg.use_u2_rewrite = false;
    }
    cfg
}

/// Input circuit: controls q0..q{n−1}, target q{n}.
fn single_gate_circuit(gate: GateKind, n: usize) -> Circuit {
    let q = qubits(0..n + 1);
    let mut c = Circuit::new(n + 1);
    c.instructions.push(Instruction::new(gate, q[..n].to_vec(), q[n]));
    c
}

fn parse_gate_args(g: &GateArgs) -> Result<GateKind, Failure> {
    spec::resolve(g.gate.as_deref(), g.theta, g.matrix.as_deref()).map_err(Failure::bad)
}

fn decomposed(g: &GateArgs) -> Result<(GateKind, Circuit, Option<QubitId>), Failure> {
    let gate = parse_gate_args(g)?;
    let input = single_gate_circuit(gate, g.controls);
    let out = decompose_circuit(&input, &config_for(g)).map_err(Failure::bad)?;
    let aux = (out.num_qubits > input.num_qubits).then_some(QubitId(input.num_qubits));
    Ok((gate, out, aux))
}

/// Writes via a temporary sibling file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(Failure::io),
    }
}

fn cmd_decompose(a: &DecomposeArgs) -> Result<(), Failure> {
    let (_, c, aux) = decomposed(&a.gate)?;
    let text = match a.format {
        Format::Stats => format!("{}\n", c.stats()),
        Format::Qasm => qasm::write_qasm(&c).map_err(Failure::bad)?,
        Format::Json => json::write_json(&c, aux).map_err(Failure::bad)?,
    };
    emit_output(a.out.as_deref(), &text)
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let n = a.gate.controls;
    if n + 2 > oracle::MAX_QUBITS {
        return Err(Failure::bad(format!(
            "{n} controls need {} qubits; the oracle handles at most {}",
            n + 2,
            oracle::MAX_QUBITS
        )));
    }
    let (gate, mut c, aux) = decomposed(&a.gate)?;
    if a.tamper {
        c.instructions.push(Instruction::single(GateKind::X, QubitId(n)));
    }
    let full = build_unitary(&c).map_err(Failure::bad)?;
    let reference = reference_cnu(&gate.matrix(), n).map_err(Failure::bad)?;
    let report = match aux {
        Some(q) => equiv_on_aux_zero(&full, &reference, q, a.tol),
        None => equiv(&full, &reference, a.tol, false),
    }
    .map_err(Failure::bad)?;
    println!(
        "max_deviation={:e} cnot_count={} aux={}",
        report.max_deviation,
        c.stats().cnot_count,
        if aux.is_some() { "used" } else { "unused" }
    );
    if report.equivalent {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!(
                "verification failed: deviation {:e} exceeds {:e} at basis column {}",
                report.max_deviation, a.tol, report.worst_column
            ),
        })
    }
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    if a.min > a.max {
        return Err(Failure::bad(format!("--min {} exceeds --max {}", a.min, a.max)));
    }
    let optimized = optimization_enabled(a.no_opt);
    let elision = !env_flag(crate::circuit::DISABLE_ELISION_ENV).unwrap_or(false);
    let mode = if a.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let records: Vec<BenchRecord> = match a.which {
        Which::Grover => {
            if a.min < 2 {
                return Err(Failure::bad("grover needs at least 2 qubits"));
            }
            bench::run_grover_bench(a.min..=a.max, optimized, elision, mode)?
        }
        Which::Prepare => {
            if a.min < 1 {
                return Err(Failure::bad("prepare needs at least 1 qubit"));
            }
            bench::run_prepare_bench(a.min..=a.max, a.seed, optimized, elision, mode)?
        }
    };
    match &a.csv {
        Some(p) => bench::write_csv(p, &records)?,
        None => bench::write_csv_to(std::io::stdout().lock(), &records)?,
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("mcdec: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
