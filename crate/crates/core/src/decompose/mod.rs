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

//! Rewrites multi-controlled gates into CNOTs and single-qubit gates.
//!
//! Every pass comes in two forms: `emit_*` streams into a [`GateSink`],
//! and the plain function returns the fragment as a `Vec<Instruction>`.

mod baseline;
mod mcx;
mod su2;
mod toffoli;
mod u2;

use thiserror::Error;

pub use baseline::mc_u2_baseline;
pub use mcx::{emit_mcx_split, emit_mcx_vchain, mc_pauli, mcx_split, mcx_vchain};
pub use su2::{c1_gate, mc_su2};
pub use toffoli::{emit_rp_toffoli, emit_toffoli_exact, rp_toffoli, toffoli_exact};
pub use u2::{mc_phase, mc_u2_rewrite, phase_fix_cn1p};

use crate::circuit::{Circuit, CircuitError, GateSink, QubitId};
use crate::qmat::{GateKind, QmatError, CONSTRUCTION_TOL};

/// Phase-correction stages with |φ| at or below this are dropped.
pub const PHI_CUTOFF: f64 = 1e-12;

/// Setting this to `true` forces the ancilla-free baseline.
pub const DISABLE_OPT_ENV: &str = "MCDEC_DISABLE_DECOMPOSITION_OPTIMIZATION";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecomposeError {
    #[error("need {required} dirty ancillas, got {available}")]
    InsufficientDirty { required: usize, available: usize },
    #[error("need at least {required} controls, got {got}")]
    TooFewControls { required: usize, got: usize },
    #[error("matrix is not special unitary (deviation {deviation:e})")]
    NotSpecialUnitary { deviation: f64 },
    #[error("{0:?} is not a Pauli gate")]
    NotPauli(GateKind),
    #[error("auxiliary qubit {0} collides with an operand")]
    AuxCollision(QubitId),
    #[error("qubit {0} used more than once in one gate")]
    DuplicateQubit(QubitId),
    #[error("small_n_threshold must be 2 or 3, got {0}")]
    BadThreshold(usize),
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// All of `qubits` plus `target` must be pairwise distinct.
pub(crate) fn check_distinct(qubits: &[QubitId], target: QubitId) -> Result<(), DecomposeError> {
    let mut seen: Vec<QubitId> = Vec::with_capacity(qubits.len() + 1);
    for &q in qubits.iter().chain(std::iter::once(&target)) {
        if seen.contains(&q) {
            return Err(DecomposeError::DuplicateQubit(q));
        }
        seen.push(q);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AuxMode {
    #[default]
    CleanAux,
    NoAux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeConfig {
    pub aux_mode: AuxMode,
    /// Route H, P and non-SU(2) matrices through the aux rewrites.
    pub use_u2_rewrite: bool,
    /// Consumed by program builders; the passes themselves ignore it.
    pub use_around_elision: bool,
    /// Pauli gates with at most this many controls borrow the aux as a
    /// dirty qubit for the plain ladder instead of splitting.
    pub small_n_threshold: usize,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        Self {
            aux_mode: AuxMode::CleanAux,
            use_u2_rewrite: true,
            use_around_elision: true,
            small_n_threshold: 2,
        }
    }
}

/// Reads a boolean toggle: `Some(true)` for true/1/yes, `Some(false)` for
/// false/0/no, `None` when unset or unrecognized.
pub fn env_flag(name: &str) -> Option<bool> {
    let v = std::env::var(name).ok()?;
    match v.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

impl DecomposeConfig {
    pub fn optimized() -> Self {
        Self::default()
    }

    pub fn baseline() -> Self {
        Self {
            aux_mode: AuxMode::NoAux,
            use_u2_rewrite: false,
            ..Self::default()
        }
    }

    /// Optimized unless `no_opt`; the environment toggle, when set, wins.
    pub fn resolve(no_opt: bool) -> Self {
        let disabled = env_flag(DISABLE_OPT_ENV).unwrap_or(no_opt);
        let mut cfg = if disabled {
            Self::baseline()
        } else {
            Self::optimized()
        };
        if let Some(off) = env_flag(crate::circuit::DISABLE_ELISION_ENV) {
            cfg.use_around_elision = !off;
        }
        cfg
    }

    pub fn from_env() -> Self {
        Self::resolve(false)
    }

    pub fn validate(&self) -> Result<(), DecomposeError> {
        if !(2..=3).contains(&self.small_n_threshold) {
            return Err(DecomposeError::BadThreshold(self.small_n_threshold));
        }
        Ok(())
    }
}

/// The single shared clean ancilla, placed right after the program qubits.
#[derive(Debug, Clone, Copy)]
pub struct AuxAllocator {
    aux: QubitId,
    used: bool,
}

impl AuxAllocator {
    pub fn new(num_program_qubits: usize) -> Self {
        Self {
            aux: QubitId(num_program_qubits),
            used: false,
        }
    }

    pub fn take(&mut self) -> QubitId {
        self.used = true;
        self.aux
    }

    pub fn peek(&self) -> QubitId {
        self.aux
    }

    pub fn used(&self) -> bool {
        self.used
    }
}

fn is_pauli(g: &GateKind) -> bool {
    matches!(g, GateKind::X | GateKind::Y | GateKind::Z)
}

fn is_su2_gate(g: &GateKind) -> bool {
    match g {
        GateKind::RX(_) | GateKind::RY(_) | GateKind::RZ(_) => true,
        GateKind::U2(m) => m.is_special_unitary(CONSTRUCTION_TOL),
        _ => false,
    }
}

/// Decomposes one gate application into `sink`.
pub fn decompose_gate<S: GateSink + ?Sized>(
    sink: &mut S,
    gate: GateKind,
    controls: &[QubitId],
    target: QubitId,
    cfg: &DecomposeConfig,
    alloc: &mut AuxAllocator,
) -> Result<(), DecomposeError> {
    let n = controls.len();
    if n == 0 {
        sink.emit_single(gate, target);
        return Ok(());
    }
    if controls.contains(&alloc.peek()) || target == alloc.peek() {
        return Err(DecomposeError::AuxCollision(alloc.peek()));
    }
    if n == 1 {
        return su2::emit_c1(sink, gate, controls[0], target);
    }

    let clean = cfg.aux_mode == AuxMode::CleanAux;
    if is_su2_gate(&gate) {
        return su2::emit_mc_su2(sink, &gate.matrix(), controls, target);
    }
    if clean && is_pauli(&gate) {
        let aux = if n > 2 { alloc.take() } else { alloc.peek() };
        return mcx::emit_mc_pauli(sink, gate, controls, target, aux, cfg.small_n_threshold);
    }
    if clean && cfg.use_u2_rewrite {
        if let GateKind::P(theta) = gate {
            if (crate::qmat::Complex::cis(theta) - crate::qmat::Complex::new(1.0, 0.0)).norm()
                > CONSTRUCTION_TOL
            {
                alloc.take();
            }
            return u2::emit_mc_phase(sink, theta, controls, target, alloc.peek());
        }
        let m = gate.matrix();
        let (_, phi) = crate::qmat::su2_part(&m)?;
        if phi.abs() > PHI_CUTOFF {
            alloc.take();
        }
        return u2::emit_mc_u2_rewrite(sink, &m, controls, target, alloc.peek());
    }
    baseline::emit_mc_u2_baseline(sink, gate, controls, target)
}

/// Streams the decomposition of `c` into `sink`. Returns whether the aux
/// qubit (index `c.num_qubits`) was touched.
pub fn decompose_into<S: GateSink + ?Sized>(
    c: &Circuit,
    cfg: &DecomposeConfig,
    sink: &mut S,
) -> Result<bool, DecomposeError> {
    cfg.validate()?;
    let mut alloc = AuxAllocator::new(c.num_qubits);
    for inst in &c.instructions {
        decompose_gate(sink, inst.gate, &inst.controls, inst.target, cfg, &mut alloc)?;
    }
    Ok(alloc.used())
}

/// Output has `c.num_qubits + 1` qubits when the aux was needed.
pub fn decompose_circuit(c: &Circuit, cfg: &DecomposeConfig) -> Result<Circuit, DecomposeError> {
    let mut out = Circuit::new(c.num_qubits + 1);
    let used = decompose_into(c, cfg, &mut out)?;
    if !used {
        out.num_qubits = c.num_qubits;
    }
    Ok(out)
}
