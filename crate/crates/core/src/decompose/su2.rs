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

//! Ancilla-free multi-controlled SU(2) and the single-control base case.

use std::f64::consts::FRAC_PI_2;

use super::mcx::emit_mcx_vchain;
use super::{check_distinct, DecomposeError, PHI_CUTOFF};
use crate::circuit::{GateSink, Instruction, QubitId};
use crate::qmat::{eig_su2, su2_part, GateKind, Mat2, CONSTRUCTION_TOL, RECONSTRUCTION_TOL};

pub(crate) fn require_su2(u: &Mat2) -> Result<(), DecomposeError> {
    let det_dev = (u.det() - crate::qmat::Complex::new(1.0, 0.0)).norm();
    if !u.is_unitary(RECONSTRUCTION_TOL) || det_dev > RECONSTRUCTION_TOL {
        return Err(DecomposeError::NotSpecialUnitary { deviation: det_dev.max(u.unitarity_deviation()) });
    }
    Ok(())
}

/// `C^n(ū)` for special unitary `ū`.
///
/// `ū = V·RZ(d)·V†`; the diagonal part is built from two half-control
/// multi-controlled X gates interleaved with `A = RZ(−d/4)`, each half
/// borrowing the other as dirty ancillas. `V` stays uncontrolled.
pub(crate) fn emit_mc_su2<S: GateSink + ?Sized>(
    s: &mut S,
    u_bar: &Mat2,
    controls: &[QubitId],
    target: QubitId,
) -> Result<(), DecomposeError> {
    require_su2(u_bar)?;
    let n = controls.len();
    if n == 0 {
        s.emit_single(GateKind::U2(*u_bar), target);
        return Ok(());
    }
    if u_bar.approx_eq(&Mat2::identity(), CONSTRUCTION_TOL) {
        return Ok(());
    }
    let eig = eig_su2(u_bar)?;
    let d = eig.d_theta;
    let basis = !eig.is_trivial_basis();

    if basis {
        s.emit_single(GateKind::U2(eig.v.dagger()), target);
    }
    if n == 1 {
        let c = controls[0];
        s.emit_single(GateKind::RZ(d / 2.0), target);
        s.emit_cnot(c, target);
        s.emit_single(GateKind::RZ(-d / 2.0), target);
        s.emit_cnot(c, target);
    } else {
        let k0 = n / 2;
        let (first, second) = controls.split_at(k0);
        let a = GateKind::RZ(-d / 4.0);
        let a_dg = GateKind::RZ(d / 4.0);
        for _ in 0..2 {
            emit_mcx_vchain(s, first, target, second)?;
            s.emit_single(a, target);
            emit_mcx_vchain(s, second, target, first)?;
            s.emit_single(a_dg, target);
        }
    }
    if basis {
        s.emit_single(GateKind::U2(eig.v), target);
    }
    Ok(())
}

pub fn mc_su2(
    u_bar: &Mat2,
    controls: &[QubitId],
    target: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    check_distinct(controls, target)?;
    let mut f = Vec::new();
    emit_mc_su2(&mut f, u_bar, controls, target)?;
    Ok(f)
}

/// `C¹U`: one CNOT for the Paulis, otherwise the two-CNOT SU(2) form plus
/// a phase gate on the control.
pub(crate) fn emit_c1<S: GateSink + ?Sized>(
    s: &mut S,
    gate: GateKind,
    control: QubitId,
    target: QubitId,
) -> Result<(), DecomposeError> {
    match gate {
        GateKind::X => s.emit_cnot(control, target),
        GateKind::Z => {
            s.emit_single(GateKind::H, target);
            s.emit_cnot(control, target);
            s.emit_single(GateKind::H, target);
        }
        GateKind::Y => {
            s.emit_single(GateKind::P(-FRAC_PI_2), target);
            s.emit_cnot(control, target);
            s.emit_single(GateKind::P(FRAC_PI_2), target);
        }
        other => {
            let (u_bar, phi) = su2_part(&other.matrix())?;
            emit_mc_su2(s, &u_bar, &[control], target)?;
            if phi.abs() > PHI_CUTOFF {
                s.emit_single(GateKind::P(phi), control);
            }
        }
    }
    Ok(())
}

pub fn c1_gate(
    gate: GateKind,
    control: QubitId,
    target: QubitId,
) -> Result<Vec<Instruction>, DecomposeError> {
    check_distinct(&[control], target)?;
    let mut f = Vec::new();
    emit_c1(&mut f, gate, control, target)?;
    Ok(f)
}
