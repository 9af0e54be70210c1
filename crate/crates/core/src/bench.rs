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


//! Benchmark programs (one Grover layer, recursive state preparation) and
//! count harvesting.

use std::f64::consts::{PI, TAU};
use std::ops::RangeInclusive;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{qubits, Builder, Circuit, CircuitError, QubitId, StatsCounter};
use crate::decompose::{decompose_into, DecomposeConfig, DecomposeError};
use crate::par::{self, ExecMode};
use crate::qmat::GateKind;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("probability list length {0} is not a power of two ≥ 2")]
    NotPowerOfTwo(usize),
    #[error("probability and phase lists differ in length ({prob} vs {amp})")]
    LengthMismatch { prob: usize, amp: usize },
    #[error("probabilities must be finite and non-negative")]
    BadProbability,
    #[error("probabilities sum to zero")]
    ZeroTotal,
    #[error("tree depth {tree} does not match {qubits} qubits")]
    DepthMismatch { tree: usize, qubits: usize },
    #[error("need at least {0} qubits")]
    TooFewQubits(usize),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Binary tree of RY angles with leaf phases.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamTree {
    pub value: f64,
    pub left: Option<Box<ParamTree>>,
    pub right: Option<Box<ParamTree>>,
    pub phase0: f64,
    pub phase1: f64,
}

impl ParamTree {
    pub fn new(prob: &[f64], amp: &[f64]) -> Result<Self, BenchError> {
        if prob.len() < 2 || !prob.len().is_power_of_two() {
            return Err(BenchError::NotPowerOfTwo(prob.len()));
        }
        if prob.len() != amp.len() {
            return Err(BenchError::LengthMismatch {
                prob: prob.len(),
                amp: amp.len(),
            });
        }
        if prob.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(BenchError::BadProbability);
        }
        let total: f64 = prob.iter().sum();
        if total == 0.0 {
            return Err(BenchError::ZeroTotal);
        }
        Ok(Self::build(prob, amp))
    }

    // A zero-mass subtree gets angle 0 everywhere; its phases never matter.
    fn build(prob: &[f64], amp: &[f64]) -> Self {
        let total: f64 = prob.iter().sum();
        let norm: Vec<f64> = if total > 0.0 {
            prob.iter().map(|p| p / total).collect()
        } else {
            vec![0.0; prob.len()]
        };
        let half = prob.len() / 2;
        let r_sum: f64 = norm[half..].iter().sum();
        let value = 2.0 * r_sum.clamp(0.0, 1.0).sqrt().asin();
        if prob.len() > 2 {
            ParamTree {
                value,
                left: Some(Box::new(Self::build(&norm[..half], &amp[..half]))),
                right: Some(Box::new(Self::build(&norm[half..], &amp[half..]))),
                phase0: 0.0,
                phase1: 0.0,
            }
        } else {
            ParamTree {
                value,
                left: None,
                right: None,
                phase0: amp[0],
                phase1: amp[1],
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.left.is_none() && self.right.is_none()
    }

    pub fn depth(&self) -> usize {
        match &self.left {
            Some(l) => 1 + l.depth(),
            None => 1,
        }
    }

    /// Seeded random tree over `n` qubits: uniform weights, phases in [0, 2π).
    pub fn random(n: usize, seed: u64) -> Result<Self, BenchError> {
        if n == 0 {
            return Err(BenchError::TooFewQubits(1));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 1usize << n;
        let prob: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        let amp: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..TAU)).collect();
        Self::new(&prob, &amp)
    }
}

/// The recursive preparation routine over `qubits` (head first).
pub fn prepare_program(b: &mut Builder, qubits: &[QubitId], tree: &ParamTree) -> Result<(), BenchError> {
    if tree.depth() != qubits.len() {
        return Err(BenchError::DepthMismatch {
            tree: tree.depth(),
            qubits: qubits.len(),
        });
    }
    prepare_rec(b, qubits, tree)?;
    Ok(())
}

fn prepare_rec(b: &mut Builder, qubits: &[QubitId], tree: &ParamTree) -> Result<(), CircuitError> {
    let (head, tail) = (qubits[0], &qubits[1..]);
    b.apply(GateKind::RY(tree.value), head)?;
    match (&tree.left, &tree.right) {
        (Some(left), Some(right)) => {
            b.around(
                |b| b.apply(GateKind::X, head),
                |b| b.control(&[head], |b| prepare_rec(b, tail, left)),
            )?;
            b.control(&[head], |b| prepare_rec(b, tail, right))
        }
        _ => {
            b.around(
                |b| b.apply(GateKind::X, head),
                |b| b.apply(GateKind::P(tree.phase0), head),
            )?;
            b.apply(GateKind::P(tree.phase1), head)
        }
    }
}

/// Marks |1…1⟩ with `C^{n−1}Z` on the last qubit.
pub fn grover_oracle(b: &mut Builder, qubits: &[QubitId]) -> Result<(), BenchError> {
    let (last, rest) = split_last(qubits)?;
    b.control(rest, |b| b.apply(GateKind::Z, last))?;
    Ok(())
}

pub fn grover_diffusion(b: &mut Builder, qubits: &[QubitId]) -> Result<(), BenchError> {
    let (last, rest) = split_last(qubits)?;
    b.around(
        |b| {
            for &q in qubits {
                b.apply(GateKind::H, q)?;
                b.apply(GateKind::X, q)?;
            }
            Ok(())
        },
        |b| b.control(rest, |b| b.apply(GateKind::Z, last)),
    )?;
    Ok(())
}

pub fn grover_layer(b: &mut Builder, qubits: &[QubitId]) -> Result<(), BenchError> {
    grover_oracle(b, qubits)?;
    grover_diffusion(b, qubits)
}

fn split_last(qubits: &[QubitId]) -> Result<(QubitId, &[QubitId]), BenchError> {
    match qubits.split_last() {
        Some((&last, rest)) if !rest.is_empty() => Ok((last, rest)),
        _ => Err(BenchError::TooFewQubits(2)),
    }
}

/// ⌊(π/4)·√(2^n)⌋ iterations.
pub fn grover_steps(n: u32) -> u64 {
    ((PI / 4.0) * 2f64.powi(n as i32).sqrt()).floor() as u64
}

pub fn grover_layer_circuit(n: usize, elision: bool) -> Result<Circuit, BenchError> {
    let mut b = Builder::new(n).with_elision(elision);
    grover_layer(&mut b, &qubits(0..n))?;
    Ok(b.finish()?)
}

pub fn prepare_circuit(tree: &ParamTree, elision: bool) -> Result<Circuit, BenchError> {
    let n = tree.depth();
    let mut b = Builder::new(n).with_elision(elision);
    prepare_program(&mut b, &qubits(0..n), tree)?;
    Ok(b.finish()?)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub optimized: bool,
    pub cnot_count: u64,
    pub total_gates: u64,
    pub controlled_gate_count: u64,
    pub depth: u64,
    pub wall_time_s: f64,
}

fn config_for(optimized: bool, elision: bool) -> DecomposeConfig {
    let mut cfg = if optimized {
        DecomposeConfig::optimized()
    } else {
        DecomposeConfig::baseline()
    };
    cfg.use_around_elision = elision;
    cfg
}

/// Decomposes with a streaming counter; nothing is retained.
fn measure(n: usize, optimized: bool, c: &Circuit, cfg: &DecomposeConfig, start: Instant) -> Result<BenchRecord, BenchError> {
    let mut counter = StatsCounter::new();
    decompose_into(c, cfg, &mut counter)?;
    let s = counter.stats();
    Ok(BenchRecord {
        n,
        optimized,
        cnot_count: s.cnot_count,
        total_gates: s.total_instructions,
        controlled_gate_count: s.controlled_gate_count,
        depth: s.depth,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

pub fn grover_record(n: usize, optimized: bool, elision: bool) -> Result<BenchRecord, BenchError> {
    let start = Instant::now();
    let cfg = config_for(optimized, elision);
    let c = grover_layer_circuit(n, cfg.use_around_elision)?;
    measure(n, optimized, &c, &cfg, start)
}

pub fn prepare_record(n: usize, seed: u64, optimized: bool, elision: bool) -> Result<BenchRecord, BenchError> {
    let start = Instant::now();
    let cfg = config_for(optimized, elision);
    let tree = ParamTree::random(n, seed)?;
    let c = prepare_circuit(&tree, cfg.use_around_elision)?;
    measure(n, optimized, &c, &cfg, start)
}

/// One layer per n. Points run concurrently; output is in ascending n.
pub fn run_grover_bench(
    ns: RangeInclusive<usize>,
    optimized: bool,
    elision: bool,
    mode: ExecMode,
) -> Result<Vec<BenchRecord>, BenchError> {
    par::map_ordered(mode, ns.collect(), |n| grover_record(n, optimized, elision))
        .into_iter()
        .collect()
}

/// Every n uses the same seed for its own random tree.
pub fn run_prepare_bench(
    ns: RangeInclusive<usize>,
    seed: u64,
    optimized: bool,
    elision: bool,
    mode: ExecMode,
) -> Result<Vec<BenchRecord>, BenchError> {
    par::map_ordered(mode, ns.collect(), |n| prepare_record(n, seed, optimized, elision))
        .into_iter()
        .collect()
}

pub fn write_csv_to<W: std::io::Write>(w: W, records: &[BenchRecord]) -> Result<(), BenchError> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_csv(path: &Path, records: &[BenchRecord]) -> Result<(), BenchError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_csv_to(&mut tmp, records)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
