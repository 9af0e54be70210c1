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

//! Gate-level IR and the scoped [`Builder`].
//!
//! A [`Builder`] keeps a stack of control scopes. Every gate applied inside
//! `control(qs, ..)` picks up `qs` as extra controls, outermost scope first.
//! `around(a, b)` emits `a`, then `b`, then the structural inverse of `a`;
//! with elision enabled the controls that were active when `around` was
//! entered are attached to `b` only.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmat::GateKind;

/// Index of a qubit in a circuit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl QubitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

pub fn qubits(range: std::ops::Range<usize>) -> Vec<QubitId> {
    range.map(QubitId).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit circuit")]
    OutOfRange { qubit: QubitId, num_qubits: usize },
    #[error("qubit {0} is both an active control and the target")]
    ControlTargetClash(QubitId),
    #[error("qubit {0} appears more than once as a control")]
    DuplicateControl(QubitId),
    #[error("unbalanced scopes: {open_controls} control scope(s) still open")]
    Unbalanced { open_controls: usize },
}

/// One gate application: `gate` on `target`, conditioned on every control being |1⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct Instruction {
    pub gate: GateKind,
    pub controls: Vec<QubitId>,
    pub target: QubitId,
}

impl Instruction {
    pub fn new(gate: GateKind, controls: Vec<QubitId>, target: QubitId) -> Self {
        Instruction {
            gate,
            controls,
            target,
        }
    }

    pub fn single(gate: GateKind, target: QubitId) -> Self {
        Instruction::new(gate, Vec::new(), target)
    }

    pub fn cnot(control: QubitId, target: QubitId) -> Self {
        Instruction::new(GateKind::X, vec![control], target)
    }

    pub fn is_cnot(&self) -> bool {
        self.controls.len() == 1 && self.gate == GateKind::X
    }

    pub fn dagger(&self) -> Self {
        Instruction::new(self.gate.dagger(), self.controls.clone(), self.target)
    }

    /// Checks distinct controls, target not a control, and register bounds.
    pub fn validate(&self, num_qubits: usize) -> Result<(), CircuitError> {
        validate_parts(&self.controls, self.target, num_qubits)
    }
}

fn validate_parts(
    controls: &[QubitId],
    target: QubitId,
    num_qubits: usize,
) -> Result<(), CircuitError> {
    for &q in controls.iter().chain(std::iter::once(&target)) {
        if q.index() >= num_qubits {
            return Err(CircuitError::OutOfRange {
                qubit: q,
                num_qubits,
            });
        }
    }
    for (i, &c) in controls.iter().enumerate() {
        if c == target {
            return Err(CircuitError::ControlTargetClash(c));
        }
        if controls[..i].contains(&c) {
            return Err(CircuitError::DuplicateControl(c));
        }
    }
    Ok(())
}

/// Reversed order with every gate replaced by its adjoint.
pub fn dagger_fragment(fragment: &[Instruction]) -> Vec<Instruction> {
    fragment.iter().rev().map(Instruction::dagger).collect()
}

/// Anything that accepts emitted instructions: a stored circuit, a bare
/// fragment, or a streaming statistics counter.
pub trait GateSink {
    fn emit(&mut self, gate: GateKind, controls: &[QubitId], target: QubitId);

    fn emit_single(&mut self, gate: GateKind, target: QubitId) {
        self.emit(gate, &[], target);
    }

    fn emit_cnot(&mut self, control: QubitId, target: QubitId) {
        self.emit(GateKind::X, &[control], target);
    }
}

impl GateSink for Vec<Instruction> {
    fn emit(&mut self, gate: GateKind, controls: &[QubitId], target: QubitId) {
        self.push(Instruction::new(gate, controls.to_vec(), target));
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub num_qubits: usize,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            instructions: Vec::new(),
        }
    }

    pub fn from_instructions(
        num_qubits: usize,
        instructions: Vec<Instruction>,
    ) -> Result<Self, CircuitError> {
        for inst in &instructions {
            inst.validate(num_qubits)?;
        }
        Ok(Circuit {
            num_qubits,
            instructions,
        })
    }

    pub fn push(&mut self, inst: Instruction) -> Result<(), CircuitError> {
        inst.validate(self.num_qubits)?;
        self.instructions.push(inst);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn stats(&self) -> Stats {
        stats_of(self)
    }

    /// Appends `other`, widening the register if needed.
    pub fn extend_from(&mut self, other: &Circuit) {
        self.num_qubits = self.num_qubits.max(other.num_qubits);
        self.instructions.extend(other.instructions.iter().cloned());
    }
}

impl GateSink for Circuit {
    fn emit(&mut self, gate: GateKind, controls: &[QubitId], target: QubitId) {
        debug_assert!(validate_parts(controls, target, self.num_qubits).is_ok());
        self.instructions
            .push(Instruction::new(gate, controls.to_vec(), target));
    }
}

/// Gate counts and depth of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Stats {
    pub cnot_count: u64,
    pub single_qubit_count: u64,
    pub multi_controlled_count: u64,
    pub controlled_gate_count: u64,
    pub total_instructions: u64,
    pub depth: u64,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cnot_count={} single_qubit_count={} multi_controlled_count={} \
             controlled_gate_count={} total_instructions={} depth={}",
            self.cnot_count,
            self.single_qubit_count,
            self.multi_controlled_count,
            self.controlled_gate_count,
            self.total_instructions,
            self.depth
        )
    }
}

/// Streaming [`Stats`] accumulator; memory is O(qubits), not O(gates).
#[derive(Debug, Clone, Default)]
pub struct StatsCounter {
    stats: Stats,
    levels: Vec<u64>,
}

impl StatsCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    fn level(&mut self, q: QubitId) -> &mut u64 {
        if q.index() >= self.levels.len() {
            self.levels.resize(q.index() + 1, 0);
        }
        &mut self.levels[q.index()]
    }
}

impl GateSink for StatsCounter {
    #[inline]
    fn emit(&mut self, gate: GateKind, controls: &[QubitId], target: QubitId) {
        let s = &mut self.stats;
        s.total_instructions += 1;
        match controls.len() {
            0 => s.single_qubit_count += 1,
            1 => {
                s.controlled_gate_count += 1;
                if gate == GateKind::X {
                    s.cnot_count += 1;
                }
            }
            _ => {
                s.controlled_gate_count += 1;
                s.multi_controlled_count += 1;
            }
        }

        let mut layer = *self.level(target);
        for &c in controls {
            layer = layer.max(*self.level(c));
        }
        layer += 1;
        *self.level(target) = layer;
        for &c in controls {
            *self.level(c) = layer;
        }
        self.stats.depth = self.stats.depth.max(layer);
    }
}

pub fn stats_of(c: &Circuit) -> Stats {
    let mut counter = StatsCounter::new();
    for inst in &c.instructions {
        counter.emit(inst.gate, &inst.controls, inst.target);
    }
    counter.stats()
}

/// Scoped circuit builder with `control` and `around` statements.
#[derive(Debug)]
pub struct Builder {
    circuit: Circuit,
    control_stack: Vec<Vec<QubitId>>,
    /// Scopes below this index are stripped from emitted gates (inside an `around` head).
    floor: usize,
    around_depth: usize,
    elision: bool,
}

/// Environment switch that turns around-elision off for builders created
/// through [`Builder::from_env`].
pub const DISABLE_ELISION_ENV: &str = "MCDEC_DISABLE_AROUND_ELISION";

impl Builder {
    pub fn new(num_qubits: usize) -> Self {
        Builder {
            circuit: Circuit::new(num_qubits),
            control_stack: Vec::new(),
            floor: 0,
            around_depth: 0,
            elision: true,
        }
    }

    /// Like [`Builder::new`], honoring [`DISABLE_ELISION_ENV`].
    pub fn from_env(num_qubits: usize) -> Self {
        let disabled = std::env::var(DISABLE_ELISION_ENV)
            .map(|v| v.eq_ignore_ascii_case("true") || v == "1")
            .unwrap_or(false);
        Builder::new(num_qubits).with_elision(!disabled)
    }

    pub fn with_elision(mut self, on: bool) -> Self {
        self.elision = on;
        self
    }

    pub fn elision(&self) -> bool {
        self.elision
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits
    }

    fn is_active_control(&self, q: QubitId) -> bool {
        self.control_stack.iter().any(|s| s.contains(&q))
    }

    fn emitted_controls(&self) -> Vec<QubitId> {
        self.control_stack[self.floor..]
            .iter()
            .flatten()
            .copied()
            .collect()
    }

    pub fn apply(&mut self, gate: GateKind, target: QubitId) -> Result<(), CircuitError> {
        if self.is_active_control(target) {
            return Err(CircuitError::ControlTargetClash(target));
        }
        let inst = Instruction::new(gate, self.emitted_controls(), target);
        self.circuit.push(inst)
    }

    /// Opens a control scope. Prefer [`Builder::control`], which always closes it.
    pub fn push_controls(&mut self, qubits: &[QubitId]) -> Result<(), CircuitError> {
        for (i, &q) in qubits.iter().enumerate() {
            if q.index() >= self.num_qubits() {
                return Err(CircuitError::OutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits(),
                });
            }
            if qubits[..i].contains(&q) || self.is_active_control(q) {
                return Err(CircuitError::DuplicateControl(q));
            }
        }
        self.control_stack.push(qubits.to_vec());
        Ok(())
    }

    pub fn pop_controls(&mut self) -> Option<Vec<QubitId>> {
        if self.control_stack.len() <= self.floor {
            return None;
        }
        self.control_stack.pop()
    }

    pub fn control<F>(&mut self, qubits: &[QubitId], body: F) -> Result<(), CircuitError>
    where
        F: FnOnce(&mut Builder) -> Result<(), CircuitError>,
    {
        self.push_controls(qubits)?;
        let depth = self.control_stack.len();
        let result = body(self);
        if self.control_stack.len() != depth {
            return Err(CircuitError::Unbalanced {
                open_controls: self.control_stack.len().saturating_sub(depth - 1),
            });
        }
        self.control_stack.pop();
        result
    }

    /// Emits `head`, `body`, then the inverse of what `head` emitted.
    pub fn around<A, B>(&mut self, head: A, body: B) -> Result<(), CircuitError>
    where
        A: FnOnce(&mut Builder) -> Result<(), CircuitError>,
        B: FnOnce(&mut Builder) -> Result<(), CircuitError>,
    {
        let depth = self.control_stack.len();
        let start = self.circuit.instructions.len();
        let saved_floor = self.floor;
        if self.elision {
            self.floor = depth;
        }
        self.around_depth += 1;
        let head_result = head(self);
        self.floor = saved_floor;
        if self.control_stack.len() != depth {
            self.around_depth -= 1;
            return Err(CircuitError::Unbalanced {
                open_controls: self.control_stack.len() - depth,
            });
        }
        if let Err(e) = head_result {
            self.around_depth -= 1;
            return Err(e);
        }
        let end = self.circuit.instructions.len();

        let body_result = body(self);
        self.around_depth -= 1;
        body_result?;
        if self.control_stack.len() != depth {
            return Err(CircuitError::Unbalanced {
                open_controls: self.control_stack.len() - depth,
            });
        }

        let undo = dagger_fragment(&self.circuit.instructions[start..end]);
        self.circuit.instructions.extend(undo);
        Ok(())
    }

    /// Current instructions, for inspection mid-build.
    pub fn instructions(&self) -> &[Instruction] {
        &self.circuit.instructions
    }

    pub fn finish(self) -> Result<Circuit, CircuitError> {
        if !self.control_stack.is_empty() || self.around_depth != 0 {
            return Err(CircuitError::Unbalanced {
                open_controls: self.control_stack.len(),
            });
        }
        Ok(self.circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> QubitId {
        QubitId(i)
    }

    #[test]
    fn apply_without_scopes() {
        let mut b = Builder::new(1);
        b.apply(GateKind::H, q(0)).unwrap();
        assert_eq!(
            b.finish().unwrap().instructions,
            vec![Instruction::single(GateKind::H, q(0))]
        );
    }

    #[test]
    fn nested_controls_are_outermost_first() {
        let mut b = Builder::new(3);
        b.control(&[q(0)], |b| {
            b.apply(GateKind::Z, q(2))?;
            b.control(&[q(1)], |b| b.apply(GateKind::RY(0.3), q(2)))
        })
        .unwrap();
        let c = b.finish().unwrap();
        assert_eq!(c.instructions[0], Instruction::new(GateKind::Z, vec![q(0)], q(2)));
        assert_eq!(
            c.instructions[1],
            Instruction::new(GateKind::RY(0.3), vec![q(0), q(1)], q(2))
        );
    }

    #[test]
    fn empty_control_is_transparent() {
        let mut b = Builder::new(2);
        b.control(&[], |b| b.apply(GateKind::X, q(1))).unwrap();
        assert_eq!(b.finish().unwrap().instructions[0].controls, vec![]);
    }

    #[test]
    fn clash_and_duplicate_errors() {
        let mut b = Builder::new(3);
        let err = b.control(&[q(0)], |b| b.apply(GateKind::X, q(0)));
        assert_eq!(err, Err(CircuitError::ControlTargetClash(q(0))));

        let mut b = Builder::new(3);
        let err = b.control(&[q(0)], |b| b.control(&[q(0)], |_| Ok(())));
        assert_eq!(err, Err(CircuitError::DuplicateControl(q(0))));

        let mut b = Builder::new(3);
        assert_eq!(
            b.control(&[q(1), q(1)], |_| Ok(())),
            Err(CircuitError::DuplicateControl(q(1)))
        );
    }

    #[test]
    fn around_with_and_without_elision() {
        let theta = 0.4;
        let run = |elide: bool, controlled: bool| {
            let mut b = Builder::new(6).with_elision(elide);
            let prog = |b: &mut Builder| {
                b.around(
                    |b| b.apply(GateKind::X, q(0)),
                    |b| b.apply(GateKind::P(theta), q(0)),
                )
            };
            if controlled {
                b.control(&[q(5)], prog).unwrap();
            } else {
                prog(&mut b).unwrap();
            }
            b.finish().unwrap().instructions
        };

        let plain = run(true, false);
        assert_eq!(
            plain,
            vec![
                Instruction::single(GateKind::X, q(0)),
                Instruction::single(GateKind::P(theta), q(0)),
                Instruction::single(GateKind::X, q(0)),
            ]
        );
        let elided = run(true, true);
        assert_eq!(
            elided,
            vec![
                Instruction::single(GateKind::X, q(0)),
                Instruction::new(GateKind::P(theta), vec![q(5)], q(0)),
                Instruction::single(GateKind::X, q(0)),
            ]
        );
        let full = run(false, true);
        assert_eq!(
            full,
            vec![
                Instruction::new(GateKind::X, vec![q(5)], q(0)),
                Instruction::new(GateKind::P(theta), vec![q(5)], q(0)),
                Instruction::new(GateKind::X, vec![q(5)], q(0)),
            ]
        );
    }

    #[test]
    fn controls_opened_inside_head_are_kept() {
        let mut b = Builder::new(4);
        b.control(&[q(3)], |b| {
            b.around(
                |b| b.control(&[q(1)], |b| b.apply(GateKind::X, q(0))),
                |b| b.apply(GateKind::Z, q(0)),
            )
        })
        .unwrap();
        let c = b.finish().unwrap();
        assert_eq!(c.instructions[0].controls, vec![q(1)]);
        assert_eq!(c.instructions[1].controls, vec![q(3)]);
        assert_eq!(c.instructions[2].controls, vec![q(1)]);
    }

    #[test]
    fn head_cannot_leave_scope_open() {
        let mut b = Builder::new(3);
        let err = b.around(|b| b.push_controls(&[q(1)]), |_| Ok(()));
        assert!(matches!(err, Err(CircuitError::Unbalanced { .. })));
    }

    #[test]
    fn unbalanced_manual_scope_detected_at_finish() {
        let mut b = Builder::new(2);
        b.push_controls(&[q(0)]).unwrap();
        assert!(matches!(b.finish(), Err(CircuitError::Unbalanced { open_controls: 1 })));
    }

    #[test]
    fn dagger_fragment_examples() {
        let h = vec![Instruction::single(GateKind::H, q(0))];
        assert_eq!(dagger_fragment(&h), h);
        let f = vec![
            Instruction::single(GateKind::X, q(0)),
            Instruction::single(GateKind::H, q(0)),
            Instruction::single(GateKind::P(0.9), q(0)),
        ];
        assert_eq!(
            dagger_fragment(&f),
            vec![
                Instruction::single(GateKind::P(-0.9), q(0)),
                Instruction::single(GateKind::H, q(0)),
                Instruction::single(GateKind::X, q(0)),
            ]
        );
    }

    #[test]
    fn stats_examples() {
        assert_eq!(stats_of(&Circuit::new(3)), Stats::default());

        let c = Circuit::from_instructions(2, vec![Instruction::cnot(q(0), q(1))]).unwrap();
        let s = stats_of(&c);
        assert_eq!((s.cnot_count, s.controlled_gate_count, s.depth), (1, 1, 1));

        // 3-qubit diffusion, undecomposed.
        let mut b = Builder::new(3);
        let all = qubits(0..3);
        b.around(
            |b| {
                for &x in &all {
                    b.apply(GateKind::H, x)?;
                }
                for &x in &all {
                    b.apply(GateKind::X, x)?;
                }
                Ok(())
            },
            |b| b.control(&all[..2], |b| b.apply(GateKind::Z, all[2])),
        )
        .unwrap();
        let s = stats_of(&b.finish().unwrap());
        assert_eq!(s.multi_controlled_count, 1);
        assert_eq!(s.controlled_gate_count, 1);
        assert_eq!(s.single_qubit_count, 12);
        assert_eq!(s.depth, 5);
    }

    #[test]
    fn depth_uses_qubit_disjointness() {
        let c = Circuit::from_instructions(
            4,
            vec![
                Instruction::single(GateKind::H, q(0)),
                Instruction::single(GateKind::H, q(1)),
                Instruction::cnot(q(0), q(1)),
                Instruction::single(GateKind::X, q(3)),
                Instruction::cnot(q(2), q(3)),
                Instruction::cnot(q(1), q(2)),
            ],
        )
        .unwrap();
        assert_eq!(stats_of(&c).depth, 3);
    }

    #[test]
    fn circuit_rejects_bad_instructions() {
        assert!(matches!(
            Circuit::from_instructions(2, vec![Instruction::cnot(q(0), q(2))]),
            Err(CircuitError::OutOfRange { .. })
        ));
        assert!(matches!(
            Circuit::from_instructions(2, vec![Instruction::cnot(q(1), q(1))]),
            Err(CircuitError::ControlTargetClash(_))
        ));
    }
}
