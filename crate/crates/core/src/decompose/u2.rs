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

//! Arbitrary U(2) targets: the auxiliary-qubit phase rewrite, the
//! multi-controlled phase gate, and the ancilla-free phase fix.

use super::baseline::emit_mc_u2_baseline;
use super::su2::emit_mc_su2;
use super::{check_distinct, DecomposeError, PHI_CUTOFF};
use crate::circuit::{GateSink, Instruction, QubitId};
use crate::qmat::{su2_part, Complex, GateKind, Mat2, CONSTRUCTION_TOL};

/// `C^n U` as `C^n Ū` on the target and `C^n RZ(−2φ)` on a clean aux.
///
/// The aux starts and ends in |0⟩, where `RZ(−2φ)` acts as `e^{iφ}`.
pub(crate) fn emit_mc_u2_rewrite<S: GateSink + ?Sized>(
    s: &mut S,
    u: &Mat2,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
) -> Result<(), DecomposeError> {
    let (u_bar, phi) = su2_part(u)?;
    if controls.is_empty() {
        s.emit_single(GateKind::U2(*u), target);
        return Ok(());
    }
    emit_mc_su2(s, &u_bar, controls, target)?;
    if phi.abs() > PHI_CUTOFF {
        emit_mc_su2(s, &Mat2::rz(-2.0 * phi), controls, aux)?;
    }
    Ok(())
}

pub fn mc_u2_rewrite(
    u: &Mat2,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    let mut all = controls.to_vec();
    all.push(aux);
    check_distinct(&all, target)?;
    let mut f = Vec::new();
    emit_mc_u2_rewrite(&mut f, u, controls, target, aux)?;
    Ok(f)
}

/// `C^n P(θ)`: the target joins the controls of an `RZ(−2θ)` on the aux.
pub(crate) fn emit_mc_phase<S: GateSink + ?Sized>(
    s: &mut S,
    theta: f64,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
) -> Result<(), DecomposeError> {
    if controls.is_empty() {
        s.emit_single(GateKind::P(theta), target);
        return Ok(());
    }
    if (Complex::cis(theta) - Complex::new(1.0, 0.0)).norm() <= CONSTRUCTION_TOL {
        return Ok(());
    }
    let mut all = controls.to_vec();
    all.push(target);
    emit_mc_su2(s, &Mat2::rz(-2.0 * theta), &all, aux)
}

pub fn mc_phase(
    theta: f64,
    controls: &[QubitId],
    target: QubitId,
    aux: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    if aux == target || controls.contains(&aux) {
        return Err(DecomposeError::AuxCollision(aux));
    }
    check_distinct(controls, target)?;
    let mut f = Vec::new();
    emit_mc_phase(&mut f, theta, controls, target, aux)?;
    Ok(f)
}

/// Ancilla-free `C^n U`: `C^n Ū`, then `C^{n−1} P(φ)` onto the last control.
pub(crate) fn emit_phase_fix_cn1p<S: GateSink + ?Sized>(
    s: &mut S,
    u: &Mat2,
    controls: &[QubitId],
    target: QubitId,
) -> Result<(), DecomposeError> {
    let n = controls.len();
    if n == 0 {
        return Err(DecomposeError::TooFewControls { required: 1, got: 0 });
    }
    let (u_bar, phi) = su2_part(u)?;
    emit_mc_su2(s, &u_bar, controls, target)?;
    if phi.abs() > PHI_CUTOFF {
        emit_mc_u2_baseline(s, GateKind::P(phi), &controls[..n - 1], controls[n - 1])?;
    }
    Ok(())
}

pub fn phase_fix_cn1p(
    u: &Mat2,
    controls: &[QubitId],
    target: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    check_distinct(controls, target)?;
    let mut f = Vec::new();
    emit_phase_fix_cn1p(&mut f, u, controls, target)?;
    Ok(f)
}
