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


//! Linear-count decomposition of multi-controlled single-qubit gates.
//!
//! Qubit 0 is the most significant bit of every basis index.

pub mod bench;
pub mod circuit;
pub mod cli;
pub mod decompose;
pub mod oracle;
pub mod par;
pub mod qmat;

pub use circuit::{Builder, Circuit, GateSink, Instruction, QubitId, Stats, StatsCounter};
pub use decompose::{decompose_circuit, decompose_into, AuxMode, DecomposeConfig, DecomposeError};
pub use qmat::{Complex, GateKind, Mat2};
