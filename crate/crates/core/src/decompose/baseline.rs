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

//! Quadratic ancilla-free reference decomposition.
//!
//! `C^n U = C^{n−1}V · C^{n−1}X · C¹V† · C^{n−1}X · C¹V` with `V² = U`,
//! recursing on `C^{n−1}V`. Each level costs O(n) CNOTs.

use super::mcx::{emit_mcx_split, emit_mcx_vchain};
use super::su2::emit_c1;
use super::{check_distinct, DecomposeError};
use crate::circuit::{GateSink, Instruction, QubitId};
use crate::qmat::{sqrt_unitary, GateKind};

/// `C^m X` with only `spare` (any state) as extra room.
fn emit_mcx_one_dirty<S: GateSink + ?Sized>(
    s: &mut S,
    controls: &[QubitId],
    target: QubitId,
    spare: QubitId,
) -> Result<(), DecomposeError> {
    if controls.len() <= 3 {
        emit_mcx_vchain(s, controls, target, &[spare])
    } else {
        emit_mcx_split(s, controls, target, spare, false)
    }
}

pub(crate) fn emit_mc_u2_baseline<S: GateSink + ?Sized>(
    s: &mut S,
    gate: GateKind,
    controls: &[QubitId],
    target: QubitId,
) -> Result<(), DecomposeError> {
    let n = controls.len();
    match n {
        0 => {
            s.emit_single(gate, target);
            Ok(())
        }
        1 => emit_c1(s, gate, controls[0], target),
        _ => {
            let v = sqrt_unitary(&gate.matrix())?;
            let last = controls[n - 1];
            let rest = &controls[..n - 1];
            emit_c1(s, GateKind::U2(v), last, target)?;
            emit_mcx_one_dirty(s, rest, last, target)?;
            emit_c1(s, GateKind::U2(v.dagger()), last, target)?;
            emit_mcx_one_dirty(s, rest, last, target)?;
            emit_mc_u2_baseline(s, GateKind::U2(v), rest, target)
        }
    }
}

pub fn mc_u2_baseline(
    gate: GateKind,
    controls: &[QubitId],
    target: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    check_distinct(controls, target)?;
    let mut f = Vec::new();
    emit_mc_u2_baseline(&mut f, gate, controls, target)?;
    Ok(f)
}
