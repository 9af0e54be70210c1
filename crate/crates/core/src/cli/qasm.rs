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


//! OpenQASM 2.0 for decomposed circuits (CNOTs and single-qubit gates).

use std::fmt::Write as _;

use crate::circuit::{Circuit, Instruction, QubitId};
use crate::qmat::{Complex, GateKind, Mat2};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QasmError {
    #[error("instruction {index} has controls and is not a CNOT")]
    Unsupported { index: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

const EPS: f64 = 1e-12;

/// `(θ, φ, λ)` with `m = e^{iγ}·U(θ, φ, λ)` for some γ.
pub fn u3_angles(m: &Mat2) -> (f64, f64, f64) {
    let [a, b, c, d] = m.m;
    let theta = 2.0 * c.norm().atan2(a.norm());
    if c.norm() <= EPS {
        let g = a.arg();
        (0.0, 0.0, d.arg() - g)
    } else if a.norm() <= EPS {
        (theta, c.arg(), (-b).arg())
    } else {
        let g = a.arg();
        (theta, c.arg() - g, (-b).arg() - g)
    }
}

pub fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Mat2::new(
        Complex::new(c, 0.0),
        -Complex::cis(lambda) * s,
        Complex::cis(phi) * s,
        Complex::cis(phi + lambda) * c,
    )
}

fn angle(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_qasm(c: &Circuit) -> Result<String, QasmError> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.num_qubits);
    for (index, inst) in c.instructions.iter().enumerate() {
        let t = inst.target.index();
        if !inst.controls.is_empty() {
            if !inst.is_cnot() {
                return Err(QasmError::Unsupported { index });
            }
            let _ = writeln!(out, "cx q[{}],q[{t}];", inst.controls[0].index());
            continue;
        }
        let _ = match inst.gate {
            GateKind::X | GateKind::Y | GateKind::Z | GateKind::H => {
                writeln!(out, "{} q[{t}];", inst.gate.name())
            }
            GateKind::P(a) | GateKind::RX(a) | GateKind::RY(a) | GateKind::RZ(a) => {
                writeln!(out, "{}({}) q[{t}];", inst.gate.name(), angle(a))
            }
            GateKind::U2(m) => {
                let (th, ph, la) = u3_angles(&m);
                writeln!(out, "u3({},{},{}) q[{t}];", angle(th), angle(ph), angle(la))
            }
        };
    }
    Ok(out)
}

fn parse_qubit(s: &str) -> Option<usize> {
    s.trim().strip_prefix("q[")?.strip_suffix(']')?.parse().ok()
}

/// Reads back exactly what [`write_qasm`] produces. `u3` gates come back as
/// `U2` matrices without their (unobservable) global phase.
pub fn read_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut num_qubits = None;
    let mut insts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| QasmError::Parse { line, msg: msg.to_string() };
        let l = raw.trim();
        if l.is_empty() || l.starts_with("//") || l.starts_with("OPENQASM") || l.starts_with("include") {
            continue;
        }
        let l = l.strip_suffix(';').ok_or_else(|| err("missing ';'"))?;
        if let Some(rest) = l.strip_prefix("qreg ") {
            num_qubits = Some(parse_qubit(rest).ok_or_else(|| err("bad qreg"))?);
            continue;
        }
        let (head, args) = l.split_once(' ').ok_or_else(|| err("missing operands"))?;
        let (name, params) = match head.split_once('(') {
            Some((n, p)) => {
                let p = p.strip_suffix(')').ok_or_else(|| err("unclosed '('"))?;
                let vals: Result<Vec<f64>, _> = p.split(',').map(|v| v.trim().parse::<f64>()).collect();
                (n, vals.map_err(|_| err("bad angle"))?)
            }
            None => (head, Vec::new()),
        };
        let qs: Option<Vec<usize>> = args.split(',').map(parse_qubit).collect();
        let qs = qs.ok_or_else(|| err("bad qubit"))?;
        let need = |k: usize, p: usize| -> Result<(), QasmError> {
            if qs.len() != k || params.len() != p {
                Err(err("wrong operand count"))
            } else {
                Ok(())
            }
        };
        let inst = match name {
            "cx" => {
                need(2, 0)?;
                Instruction::cnot(QubitId(qs[0]), QubitId(qs[1]))
            }
            "x" | "y" | "z" | "h" => {
                need(1, 0)?;
                let g = match name {
                    "x" => GateKind::X,
                    "y" => GateKind::Y,
                    "z" => GateKind::Z,
                    _ => GateKind::H,
                };
                Instruction::single(g, QubitId(qs[0]))
            }
            "p" | "rx" | "ry" | "rz" => {
                need(1, 1)?;
                let a = params[0];
                let g = match name {
                    "p" => GateKind::P(a),
                    "rx" => GateKind::RX(a),
                    "ry" => GateKind::RY(a),
                    _ => GateKind::RZ(a),
                };
                Instruction::single(g, QubitId(qs[0]))
            }
            "u3" => {
                need(1, 3)?;
                let m = u3_matrix(params[0], params[1], params[2]);
                Instruction::single(GateKind::U2(m), QubitId(qs[0]))
            }
            other => return Err(err(&format!("unsupported gate '{other}'"))),
        };
        insts.push(inst);
    }
    let n = num_qubits.ok_or(QasmError::Parse { line: 0, msg: "no qreg".into() })?;
    Circuit::from_instructions(n, insts).map_err(|e| QasmError::Parse { line: 0, msg: e.to_string() })
}
