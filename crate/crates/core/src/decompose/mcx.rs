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

//! Multi-controlled X: the dirty-ancilla ladder, the half-split with one
//! auxiliary qubit, and Pauli Y/Z by conjugation.

use std::f64::consts::FRAC_PI_2;

use super::toffoli::{emit_action, emit_reset, emit_rp_toffoli, emit_toffoli_exact};
use super::{check_distinct, DecomposeError};
use crate::circuit::{GateSink, Instruction, QubitId};
use crate::qmat::GateKind;

/// `C^k X` using `k - 2` borrowed qubits in any state, which are restored.
///
/// Outer Toffolis are exact; the inner ones are relative-phase halves
/// arranged so their phases cancel. 8k − 6 CNOTs for k ≥ 3.
pub fn emit_mcx_vchain<S: GateSink + ?Sized>(
    s: &mut S,
    controls: &[QubitId],
    target: QubitId,
    dirty: &[QubitId],
) -> Result<(), DecomposeError> {
    let k = controls.len();
    match k {
        0 => s.emit_single(GateKind::X, target),
        1 => s.emit_cnot(controls[0], target),
        2 => emit_toffoli_exact(s, controls[0], controls[1], target),
        _ => {
            if dirty.len() < k - 2 {
                return Err(DecomposeError::InsufficientDirty {
                    required: k - 2,
                    available: dirty.len(),
                });
            }
            let anc = &dirty[..k - 2];
            for _ in 0..2 {
                emit_toffoli_exact(s, controls[k - 1], anc[k - 3], target);
                for i in (0..k - 3).rev() {
                    emit_action(s, controls[i + 2], anc[i], anc[i + 1]);
                }
                emit_rp_toffoli(s, controls[0], controls[1], anc[0]);
                for i in 0..k - 3 {
                    emit_reset(s, controls[i + 2], anc[i], anc[i + 1]);
                }
            }
        }
    }
    Ok(())
}

pub fn mcx_vchain(
    controls: &[QubitId],
    target: QubitId,
    dirty: &[QubitId],
) -> Result<Vec<Instruction>, DecomposeError> {
    let all: Vec<QubitId> = controls.iter().chain(dirty).copied().collect();
    check_distinct(&all, target)?;
    let mut f = Vec::new();
    emit_mcx_vchain(&mut f, controls, target, dirty)?;
    Ok(f)
}

/// `C^n X` split in two halves around one auxiliary qubit.
///
/// The first ⌈n/2⌉ controls flip `aux`; the rest plus `aux` flip `target`;
/// then `aux` is flipped back. A dirty `aux` needs the target block once more.
pub fn emit_mcx_split<S: GateSink + ?Sized>(
    s: &mut S,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
    aux_clean: bool,
) -> Result<(), DecomposeError> {
    let n = controls.len();
    if n < 3 {
        return Err(DecomposeError::TooFewControls {
            required: 3,
            got: n,
        });
    }
    let k0 = n.div_ceil(2);
    let (first, second) = controls.split_at(k0);

    let mut aux_dirty: Vec<QubitId> = second.to_vec();
    aux_dirty.push(target);
    let mut target_controls: Vec<QubitId> = second.to_vec();
    target_controls.push(aux);

    emit_mcx_vchain(s, first, aux, &aux_dirty)?;
    emit_mcx_vchain(s, &target_controls, target, first)?;
    emit_mcx_vchain(s, first, aux, &aux_dirty)?;
    if !aux_clean {
        emit_mcx_vchain(s, &target_controls, target, first)?;
    }
    Ok(())
}

pub fn mcx_split(
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
    aux_clean: bool,
) -> Result<Vec<Instruction>, DecomposeError> {
    let mut all = controls.to_vec();
    all.push(aux);
    check_distinct(&all, target)?;
    let mut f = Vec::new();
    emit_mcx_split(&mut f, controls, target, aux, aux_clean)?;
    Ok(f)
}

/// `C^n X` with whatever the configuration allows: base cases, the ladder
/// borrowing `aux` as its single dirty qubit, or the clean half-split.
pub(crate) fn emit_mcx_clean<S: GateSink + ?Sized>(
    s: &mut S,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
    small_n_threshold: usize,
) -> Result<(), DecomposeError> {
    let n = controls.len();
    if n <= 2 {
        emit_mcx_vchain(s, controls, target, &[])
    } else if n <= small_n_threshold {
        emit_mcx_vchain(s, controls, target, &[aux])
    } else {
        emit_mcx_split(s, controls, target, aux, true)
    }
}

/// `C^n` of a Pauli gate through the multi-controlled X core.
pub(crate) fn emit_mc_pauli<S: GateSink + ?Sized>(
    s: &mut S,
    gate: GateKind,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
    small_n_threshold: usize,
) -> Result<(), DecomposeError> {
    if controls.is_empty() {
        s.emit_single(gate, target);
        return Ok(());
    }
    match gate {
        GateKind::X => emit_mcx_clean(s, controls, target, aux, small_n_threshold),
        GateKind::Z => {
            s.emit_single(GateKind::H, target);
            emit_mcx_clean(s, controls, target, aux, small_n_threshold)?;
            s.emit_single(GateKind::H, target);
            Ok(())
        }
        GateKind::Y => {
            // S · X · S† = Y
            s.emit_single(GateKind::P(-FRAC_PI_2), target);
            emit_mcx_clean(s, controls, target, aux, small_n_threshold)?;
            s.emit_single(GateKind::P(FRAC_PI_2), target);
            Ok(())
        }
        other => Err(DecomposeError::NotPauli(other)),
    }
}

/// Multi-controlled Pauli with a clean auxiliary qubit, ≤ 12n CNOTs.
pub fn mc_pauli(
    gate: GateKind,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    let mut all = controls.to_vec();
    all.push(aux);
    check_distinct(&all, target)?;
    let mut f = Vec::new();
    emit_mc_pauli(&mut f, gate, controls, target, aux, 2)?;
    Ok(f)
}
