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

//! Exact and relative-phase Toffoli gates, plus the two halves of the
//! relative-phase Toffoli used inside the V-chain ladder.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{GateSink, Instruction, QubitId};
use crate::qmat::GateKind;

const T: GateKind = GateKind::P(FRAC_PI_4);
const TDG: GateKind = GateKind::P(-FRAC_PI_4);

/// Exact C²X with 6 CNOTs.
pub fn emit_toffoli_exact<S: GateSink + ?Sized>(s: &mut S, c0: QubitId, c1: QubitId, t: QubitId) {
    s.emit_single(GateKind::H, t);
    s.emit_cnot(c1, t);
    s.emit_single(TDG, t);
    s.emit_cnot(c0, t);
    s.emit_single(T, t);
    s.emit_cnot(c1, t);
    s.emit_single(TDG, t);
    s.emit_cnot(c0, t);
    s.emit_single(T, c1);
    s.emit_single(T, t);
    s.emit_single(GateKind::H, t);
    s.emit_cnot(c0, c1);
    s.emit_single(T, c0);
    s.emit_single(TDG, c1);
    s.emit_cnot(c0, c1);
}

/// C²X up to a diagonal phase on the basis states, 3 CNOTs. Self-inverse.
pub fn emit_rp_toffoli<S: GateSink + ?Sized>(s: &mut S, c0: QubitId, c1: QubitId, t: QubitId) {
    s.emit_single(GateKind::H, t);
    s.emit_single(T, t);
    s.emit_cnot(c1, t);
    s.emit_single(TDG, t);
    s.emit_cnot(c0, t);
    s.emit_single(T, t);
    s.emit_cnot(c1, t);
    s.emit_single(TDG, t);
    s.emit_single(GateKind::H, t);
}

/// First half of a relative-phase Toffoli on (c0, c1 → t).
pub(crate) fn emit_action<S: GateSink + ?Sized>(s: &mut S, c0: QubitId, c1: QubitId, t: QubitId) {
    s.emit_single(GateKind::H, t);
    s.emit_single(T, t);
    s.emit_cnot(c0, t);
    s.emit_single(TDG, t);
    s.emit_cnot(c1, t);
}

/// Second half, undoing the phases left by [`emit_action`].
pub(crate) fn emit_reset<S: GateSink + ?Sized>(s: &mut S, c0: QubitId, c1: QubitId, t: QubitId) {
    s.emit_cnot(c1, t);
    s.emit_single(T, t);
    s.emit_cnot(c0, t);
    s.emit_single(TDG, t);
    s.emit_single(GateKind::H, t);
}

pub fn toffoli_exact(c0: QubitId, c1: QubitId, t: QubitId) -> Vec<Instruction> {
    let mut f = Vec::new();
    emit_toffoli_exact(&mut f, c0, c1, t);
    f
}

pub fn rp_toffoli(c0: QubitId, c1: QubitId, t: QubitId) -> Vec<Instruction> {
    let mut f = Vec::new();
    emit_rp_toffoli(&mut f, c0, c1, t);
    f
}
