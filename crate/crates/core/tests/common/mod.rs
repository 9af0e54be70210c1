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


#![allow(dead_code)]

use mcdec::qmat::{Complex, Mat2};
use mcdec::{Circuit, GateKind, Instruction, QubitId};
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform on SU(2) via a normalized Gaussian quaternion.
pub fn random_su2(rng: &mut impl Rng) -> Mat2 {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    Mat2::new(
        Complex::new(a, b),
        Complex::new(-c, d),
        Complex::new(c, d),
        Complex::new(a, -b),
    )
}

/// Random SU(2) times a uniform global phase.
pub fn random_u2(rng: &mut impl Rng) -> Mat2 {
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    random_su2(rng).scale(Complex::cis(phase))
}

/// The named gate alphabet with fixed sample angles.
pub fn named_gates() -> Vec<GateKind> {
    vec![
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::P(0.7),
        GateKind::RX(1.3),
        GateKind::RY(-0.4),
        GateKind::RZ(2.1),
    ]
}

/// One `C^n gate` with controls q0..q{n−1} and target q{n}.
pub fn single(gate: GateKind, n: usize) -> Circuit {
    let mut c = Circuit::new(n + 1);
    c.push(Instruction::new(gate, (0..n).map(QubitId).collect(), QubitId(n)))
        .unwrap();
    c
}

pub fn only_cnots_and_singles(c: &Circuit) -> bool {
    c.instructions.iter().all(|i| i.controls.is_empty() || i.is_cnot())
}
