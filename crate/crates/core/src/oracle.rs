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

//! Brute-force reference semantics.
//!
//! Qubit 0 is the most significant bit of a basis index: on `m` qubits,
//! qubit `q` is bit `m - 1 - q`. Unitaries are built one basis column at a
//! time by pushing that basis state through every instruction.

use thiserror::Error;

use crate::circuit::{Circuit, Instruction, QubitId};
use crate::par::{self, ExecMode};
use crate::qmat::{Complex, Mat2};

pub const MAX_QUBITS: usize = 14;

/// Default tolerance for short fragments.
pub const FRAGMENT_TOL: f64 = 1e-10;
/// Default tolerance for whole decomposed circuits.
pub const CIRCUIT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{num_qubits} qubits exceeds the oracle limit of {MAX_QUBITS}")]
    TooLarge { num_qubits: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("aux qubit {aux} is outside a {num_qubits}-qubit register")]
    BadAux { aux: QubitId, num_qubits: usize },
}

/// Column-major dense unitary of dimension `2^num_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    num_qubits: usize,
    dim: usize,
    data: Vec<Complex>,
}

impl DenseUnitary {
    pub fn identity(num_qubits: usize) -> Result<Self, OracleError> {
        if num_qubits > MAX_QUBITS {
            return Err(OracleError::TooLarge { num_qubits });
        }
        let dim = 1usize << num_qubits;
        let mut data = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::new(1.0, 0.0);
        }
        Ok(DenseUnitary {
            num_qubits,
            dim,
            data,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    /// Largest elementwise modulus of `U·U† - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                // (U†U)_{ij} = <col i, col j>
                let dot: Complex = self
                    .column(i)
                    .iter()
                    .zip(self.column(j))
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }
}

#[inline]
fn bit_of(num_qubits: usize, q: QubitId) -> usize {
    1usize << (num_qubits - 1 - q.index())
}

/// Applies one instruction to a state vector in place.
pub fn apply_instruction(state: &mut [Complex], num_qubits: usize, inst: &Instruction) {
    let m = inst.gate.matrix();
    let tbit = bit_of(num_qubits, inst.target);
    let cmask = inst
        .controls
        .iter()
        .fold(0usize, |acc, &c| acc | bit_of(num_qubits, c));
    apply_matrix(state, tbit, cmask, &m);
}

#[inline]
fn apply_matrix(state: &mut [Complex], tbit: usize, cmask: usize, m: &Mat2) {
    let [a, b, c, d] = m.m;
    for i in 0..state.len() {
        if i & tbit != 0 || i & cmask != cmask {
            continue;
        }
        let j = i | tbit;
        let (x0, x1) = (state[i], state[j]);
        state[i] = a * x0 + b * x1;
        state[j] = c * x0 + d * x1;
    }
}

/// Runs a circuit on an explicit input state.
pub fn simulate(c: &Circuit, input: &[Complex]) -> Result<Vec<Complex>, OracleError> {
    if c.num_qubits > MAX_QUBITS + 8 {
        return Err(OracleError::TooLarge {
            num_qubits: c.num_qubits,
        });
    }
    let dim = 1usize << c.num_qubits;
    if input.len() != dim {
        return Err(OracleError::DimMismatch {
            left: input.len(),
            right: dim,
        });
    }
    let mut state = input.to_vec();
    for inst in &c.instructions {
        apply_instruction(&mut state, c.num_qubits, inst);
    }
    Ok(state)
}

/// Simulates from |0…0⟩.
pub fn simulate_zero(c: &Circuit) -> Result<Vec<Complex>, OracleError> {
    let mut input = vec![Complex::new(0.0, 0.0); 1usize << c.num_qubits];
    input[0] = Complex::new(1.0, 0.0);
    simulate(c, &input)
}

pub fn build_unitary(c: &Circuit) -> Result<DenseUnitary, OracleError> {
    build_unitary_with(c, ExecMode::default())
}

pub fn build_unitary_with(c: &Circuit, mode: ExecMode) -> Result<DenseUnitary, OracleError> {
    let mut u = DenseUnitary::identity(c.num_qubits)?;
    let n = c.num_qubits;
    let dim = u.dim;
    let ops: Vec<(usize, usize, Mat2)> = c
        .instructions
        .iter()
        .map(|inst| {
            let cmask = inst.controls.iter().fold(0, |acc, &q| acc | bit_of(n, q));
            (bit_of(n, inst.target), cmask, inst.gate.matrix())
        })
        .collect();
    par::for_each_chunk(mode, &mut u.data, dim, |_, column| {
        for (tbit, cmask, m) in &ops {
            apply_matrix(column, *tbit, *cmask, m);
        }
    });
    Ok(u)
}

/// The block-diagonal `C^n u` on `n + 1` qubits, controls first, target last.
pub fn reference_cnu(u: &Mat2, n: usize) -> Result<DenseUnitary, OracleError> {
    let mut r = DenseUnitary::identity(n + 1)?;
    let dim = r.dim;
    let (lo, hi) = (dim - 2, dim - 1);
    for (row, col, v) in [
        (lo, lo, u.get(0, 0)),
        (lo, hi, u.get(0, 1)),
        (hi, lo, u.get(1, 0)),
        (hi, hi, u.get(1, 1)),
    ] {
        r.data[col * dim + row] = v;
    }
    Ok(r)
}

/// Outcome of an equivalence check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivReport {
    pub equivalent: bool,
    /// Largest deviation found (elementwise, or aux leakage norm).
    pub max_deviation: f64,
    /// Column (of the reference) where the largest deviation occurred.
    pub worst_column: usize,
}

/// Elementwise comparison, optionally modulo one global phase.
pub fn equiv(
    a: &DenseUnitary,
    b: &DenseUnitary,
    tol: f64,
    up_to_global_phase: bool,
) -> Result<EquivReport, OracleError> {
    if a.dim != b.dim {
        return Err(OracleError::DimMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let dim = a.dim;
    let phase = if up_to_global_phase {
        // diag(a†b)_j = <a col j, b col j>; align on the largest one.
        let best = (0..dim)
            .map(|j| {
                a.column(j)
                    .iter()
                    .zip(b.column(j))
                    .map(|(x, y)| x.conj() * y)
                    .sum::<Complex>()
            })
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap_or(Complex::new(1.0, 0.0));
        if best.norm() > 0.0 {
            best / best.norm()
        } else {
            Complex::new(1.0, 0.0)
        }
    } else {
        Complex::new(1.0, 0.0)
    };

    let mut report = EquivReport {
        equivalent: true,
        max_deviation: 0.0,
        worst_column: 0,
    };
    for col in 0..dim {
        for row in 0..dim {
            let dev = (a.get(row, col) * phase - b.get(row, col)).norm();
            if dev > report.max_deviation {
                report.max_deviation = dev;
                report.worst_column = col;
            }
        }
    }
    report.equivalent = report.max_deviation <= tol;
    Ok(report)
}

/// Inserts a zero bit at position `bit` (counted from the least significant end).
#[inline]
fn insert_zero_bit(x: usize, bit: usize) -> usize {
    let low = x & ((1 << bit) - 1);
    let high = x >> bit;
    (high << (bit + 1)) | low
}

/// Checks `full` against `reference` on inputs with `aux` in |0⟩.
///
/// For every such input column the output must carry no weight on aux = |1⟩
/// rows (Euclidean norm ≤ `tol`), and its aux = |0⟩ part must match the
/// reference column elementwise within `tol`. `reference` acts on the
/// remaining qubits in their original order.
pub fn equiv_on_aux_zero(
    full: &DenseUnitary,
    reference: &DenseUnitary,
    aux: QubitId,
    tol: f64,
) -> Result<EquivReport, OracleError> {
    if full.dim != 2 * reference.dim {
        return Err(OracleError::DimMismatch {
            left: full.dim,
            right: 2 * reference.dim,
        });
    }
    if aux.index() >= full.num_qubits {
        return Err(OracleError::BadAux {
            aux,
            num_qubits: full.num_qubits,
        });
    }
    let abit = full.num_qubits - 1 - aux.index();
    let mut report = EquivReport {
        equivalent: true,
        max_deviation: 0.0,
        worst_column: 0,
    };
    for rcol in 0..reference.dim {
        let fcol = insert_zero_bit(rcol, abit);
        let column = full.column(fcol);
        let mut leak = 0.0;
        let mut dev: f64 = 0.0;
        for (frow, amp) in column.iter().enumerate() {
            if frow & (1 << abit) != 0 {
                leak += amp.norm_sqr();
            } else {
                let rrow = (frow >> (abit + 1) << abit) | (frow & ((1 << abit) - 1));
                dev = dev.max((amp - reference.get(rrow, rcol)).norm());
            }
        }
        let worst = dev.max(leak.sqrt());
        if worst > report.max_deviation {
            report.max_deviation = worst;
            report.worst_column = rcol;
        }
    }
    report.equivalent = report.max_deviation <= tol;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{qubits, Instruction};
    use crate::qmat::GateKind;

    fn q(i: usize) -> QubitId {
        QubitId(i)
    }

    fn cnot_matrix() -> DenseUnitary {
        let c = Circuit::from_instructions(2, vec![Instruction::cnot(q(0), q(1))]).unwrap();
        build_unitary(&c).unwrap()
    }

    #[test]
    fn empty_circuit_is_identity() {
        let u = build_unitary(&Circuit::new(2)).unwrap();
        assert_eq!(u, DenseUnitary::identity(2).unwrap());
    }

    #[test]
    fn cnot_matches_textbook_matrix() {
        let u = cnot_matrix();
        let expected = [
            [1., 0., 0., 0.],
            [0., 1., 0., 0.],
            [0., 0., 0., 1.],
            [0., 0., 1., 0.],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(u.get(r, c), Complex::new(v, 0.0));
            }
        }
        assert_eq!(u, reference_cnu(&Mat2::x(), 1).unwrap());
    }

    #[test]
    fn reference_examples() {
        let h = reference_cnu(&Mat2::h(), 0).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(h.get(r, c), Mat2::h().get(r, c));
            }
        }
        let ccz = reference_cnu(&Mat2::z(), 2).unwrap();
        for i in 0..8 {
            let d = if i == 7 { -1.0 } else { 1.0 };
            assert_eq!(ccz.get(i, i), Complex::new(d, 0.0));
        }
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            build_unitary(&Circuit::new(15)),
            Err(OracleError::TooLarge { num_qubits: 15 })
        ));
        assert!(reference_cnu(&Mat2::x(), 14).is_err());
    }

    #[test]
    fn equiv_examples() {
        let m = cnot_matrix();
        assert!(equiv(&m, &m, 1e-12, false).unwrap().equivalent);

        let mut shifted = m.clone();
        let ph = Complex::cis(std::f64::consts::PI / 7.0);
        shifted.data.iter_mut().for_each(|z| *z *= ph);
        assert!(!equiv(&shifted, &m, 1e-12, false).unwrap().equivalent);
        assert!(equiv(&shifted, &m, 1e-12, true).unwrap().equivalent);

        let crx = reference_cnu(&Mat2::rx(std::f64::consts::PI), 1).unwrap();
        assert!(!equiv(&m, &crx, 1e-12, false).unwrap().equivalent);
        assert!(!equiv(&m, &crx, 1e-12, true).unwrap().equivalent);
        assert!(equiv(&m, &DenseUnitary::identity(3).unwrap(), 1.0, false).is_err());
    }

    #[test]
    fn aux_zero_equivalence() {
        // C²H on q0,q1 -> q2 with an untouched aux q3.
        let mut c = Circuit::new(4);
        c.push(Instruction::new(GateKind::H, qubits(0..2), q(2))).unwrap();
        let reference = reference_cnu(&Mat2::h(), 2).unwrap();
        let full = build_unitary(&c).unwrap();
        let r = equiv_on_aux_zero(&full, &reference, q(3), 1e-12).unwrap();
        assert!(r.equivalent);

        // aux in the middle of the register
        let mut c = Circuit::new(4);
        c.push(Instruction::new(GateKind::H, vec![q(0), q(2)], q(3))).unwrap();
        let full = build_unitary(&c).unwrap();
        assert!(equiv_on_aux_zero(&full, &reference, q(1), 1e-12).unwrap().equivalent);

        // flipping the aux leaks every column
        let mut c = Circuit::new(4);
        c.push(Instruction::new(GateKind::H, qubits(0..2), q(2))).unwrap();
        c.push(Instruction::single(GateKind::X, q(3))).unwrap();
        let full = build_unitary(&c).unwrap();
        let r = equiv_on_aux_zero(&full, &reference, q(3), 1e-8).unwrap();
        assert!(!r.equivalent);
        assert_eq!(r.worst_column, 0);
        assert!((r.max_deviation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut c = Circuit::new(5);
        for i in 0..5 {
            c.push(Instruction::single(GateKind::RY(0.3 * i as f64 + 0.1), q(i))).unwrap();
        }
        c.push(Instruction::new(GateKind::H, qubits(0..3), q(4))).unwrap();
        c.push(Instruction::cnot(q(4), q(1))).unwrap();
        let a = build_unitary_with(&c, ExecMode::Sequential).unwrap();
        let b = build_unitary_with(&c, ExecMode::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.unitarity_deviation() < 1e-12);
    }
}
