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


//! JSON circuit schema.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Instruction, QubitId};
use crate::qmat::{Complex, GateKind, Mat2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonInstruction {
    pub gate: String,
    pub theta: Option<f64>,
    pub matrix: Option<Vec<[f64; 2]>>,
    pub controls: Vec<usize>,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonCircuit {
    pub num_qubits: usize,
    pub aux: Option<usize>,
    pub instructions: Vec<JsonInstruction>,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error("instruction {index}: {msg}")]
    Bad { index: usize, msg: String },
}

impl JsonCircuit {
    pub fn from_circuit(c: &Circuit, aux: Option<QubitId>) -> Self {
        let instructions = c
            .instructions
            .iter()
            .map(|i| JsonInstruction {
                gate: i.gate.name().to_string(),
                theta: i.gate.theta(),
                matrix: match i.gate {
                    GateKind::U2(m) => Some(m.m.iter().map(|z| [z.re, z.im]).collect()),
                    _ => None,
                },
                controls: i.controls.iter().map(|q| q.index()).collect(),
                target: i.target.index(),
            })
            .collect();
        JsonCircuit {
            num_qubits: c.num_qubits,
            aux: aux.map(|q| q.index()),
            instructions,
        }
    }

    pub fn to_circuit(&self) -> Result<Circuit, JsonError> {
        let mut insts = Vec::with_capacity(self.instructions.len());
        for (index, ji) in self.instructions.iter().enumerate() {
            let bad = |msg: &str| JsonError::Bad { index, msg: msg.to_string() };
            let theta = || ji.theta.ok_or_else(|| bad("missing theta"));
            let gate = match ji.gate.as_str() {
                "x" => GateKind::X,
                "y" => GateKind::Y,
                "z" => GateKind::Z,
                "h" => GateKind::H,
                "p" => GateKind::P(theta()?),
                "rx" => GateKind::RX(theta()?),
                "ry" => GateKind::RY(theta()?),
                "rz" => GateKind::RZ(theta()?),
                "u2" => {
                    let m = ji.matrix.as_ref().ok_or_else(|| bad("missing matrix"))?;
                    if m.len() != 4 {
                        return Err(bad("matrix needs 4 entries"));
                    }
                    let e = |k: usize| Complex::new(m[k][0], m[k][1]);
                    GateKind::u2(Mat2::new(e(0), e(1), e(2), e(3))).map_err(|e| bad(&e.to_string()))?
                }
                other => return Err(bad(&format!("unknown gate '{other}'"))),
            };
            insts.push(Instruction::new(
                gate,
                ji.controls.iter().map(|&q| QubitId(q)).collect(),
                QubitId(ji.target),
            ));
        }
        Circuit::from_instructions(self.num_qubits, insts).map_err(|e| JsonError::Bad {
            index: 0,
            msg: e.to_string(),
        })
    }
}

pub fn write_json(c: &Circuit, aux: Option<QubitId>) -> Result<String, JsonError> {
    let mut s = serde_json::to_string_pretty(&JsonCircuit::from_circuit(c, aux))?;
    s.push('\n');
    Ok(s)
}

pub fn read_json(text: &str) -> Result<(Circuit, Option<QubitId>), JsonError> {
    let jc: JsonCircuit = serde_json::from_str(text)?;
    Ok((jc.to_circuit()?, jc.aux.map(QubitId)))
}
