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


//! Property tests for the module invariants.

mod common;

use mcdec::bench::{self, ParamTree};
use mcdec::circuit::{dagger_fragment, qubits, stats_of, Builder};
use mcdec::cli::{json, qasm};
use mcdec::decompose::{self, decompose_circuit, DecomposeConfig};
use mcdec::oracle::{build_unitary, equiv, equiv_on_aux_zero, reference_cnu, DenseUnitary};
use mcdec::qmat::{dagger_gate, eig_su2, gate_matrix, su2_part, Complex, Mat2};
use mcdec::{Circuit, GateKind, Instruction, QubitId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn identity(num_qubits: usize) -> DenseUnitary {
    DenseUnitary::identity(num_qubits).unwrap()
}

fn angle() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn su2() -> impl Strategy<Value = Mat2> {
    any::<u64>().prop_map(|s| common::random_su2(&mut ChaCha8Rng::seed_from_u64(s)))
}

fn u2() -> impl Strategy<Value = Mat2> {
    any::<u64>().prop_map(|s| common::random_u2(&mut ChaCha8Rng::seed_from_u64(s)))
}

fn gate() -> impl Strategy<Value = GateKind> {
    prop_oneof![
        Just(GateKind::X),
        Just(GateKind::Y),
        Just(GateKind::Z),
        Just(GateKind::H),
        angle().prop_map(GateKind::P),
        angle().prop_map(GateKind::RX),
        angle().prop_map(GateKind::RY),
        angle().prop_map(GateKind::RZ),
        u2().prop_map(GateKind::U2),
    ]
}

/// Random instruction on `m` qubits with up to two controls.
fn instruction(m: usize) -> impl Strategy<Value = Instruction> {
    (gate(), Just(()).prop_perturb(move |_, mut rng| {
        let mut qs: Vec<usize> = (0..m).collect();
        for i in (1..qs.len()).rev() {
            qs.swap(i, rng.random_range(0..=i));
        }
        let k = rng.random_range(0..=2.min(m - 1));
        (qs[0], qs[1..=k].to_vec())
    }))
        .prop_map(|(g, (t, cs))| Instruction::new(g, cs.into_iter().map(QubitId).collect(), QubitId(t)))
}

fn fragment(m: usize, max_len: usize) -> impl Strategy<Value = Vec<Instruction>> {
    prop::collection::vec(instruction(m), 0..max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn su2_part_reconstructs(u in u2()) {
        let (u_bar, phi) = su2_part(&u).unwrap();
        prop_assert!((u_bar.det() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(u_bar.scale(Complex::cis(phi)).approx_eq(&u, 1e-12));
        prop_assert!(phi > -std::f64::consts::FRAC_PI_2 && phi <= std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn eig_reconstructs(u in su2()) {
        let e = eig_su2(&u).unwrap();
        prop_assert!(e.reconstruct().approx_eq(&u, 1e-10));
        prop_assert!(e.v.is_unitary(1e-10));
    }

    #[test]
    fn eig_near_identity(eps in -1e-6..1e-6f64, u in su2()) {
        let e0 = eig_su2(&u).unwrap();
        let near = e0.v * Mat2::rz(eps) * e0.v.dagger();
        prop_assert!(eig_su2(&near).unwrap().reconstruct().approx_eq(&near, 1e-10));
    }

    #[test]
    fn dagger_is_inverse(g in gate()) {
        let p = gate_matrix(&dagger_gate(&g)) * gate_matrix(&g);
        prop_assert!(p.approx_eq(&Mat2::identity(), 1e-12));
    }

    #[test]
    fn fragment_then_dagger_is_identity(f in fragment(5, 20)) {
        let mut all = f.clone();
        all.extend(dagger_fragment(&f));
        let u = build_unitary(&Circuit::from_instructions(5, all).unwrap()).unwrap();
        prop_assert!(equiv(&u, &identity(5), 1e-10, false).unwrap().equivalent);
    }

    #[test]
    fn built_unitaries_are_unitary(f in fragment(4, 30)) {
        let u = build_unitary(&Circuit::from_instructions(4, f).unwrap()).unwrap();
        prop_assert!(u.unitarity_deviation() <= 1e-10);
    }

    #[test]
    fn equiv_reflexive_and_symmetric(a in fragment(3, 10), b in fragment(3, 10)) {
        let ua = build_unitary(&Circuit::from_instructions(3, a).unwrap()).unwrap();
        let ub = build_unitary(&Circuit::from_instructions(3, b).unwrap()).unwrap();
        prop_assert!(equiv(&ua, &ua, 0.0, false).unwrap().equivalent);
        let ab = equiv(&ua, &ub, 1e-9, false).unwrap();
        let ba = equiv(&ub, &ua, 1e-9, false).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        prop_assert!((ab.max_deviation - ba.max_deviation).abs() < 1e-12);
    }

    #[test]
    fn single_instruction_matches_reference(g in gate(), n in 0usize..6) {
        let u = build_unitary(&common::single(g, n)).unwrap();
        let r = reference_cnu(&g.matrix(), n).unwrap();
        prop_assert!(equiv(&u, &r, 0.0, false).unwrap().equivalent);
    }

    #[test]
    fn around_elision_is_sound(
        a in fragment(4, 6),
        b in fragment(4, 6),
        k in 1usize..=3,
    ) {
        // Program qubits 0..4, outer controls 4..4+k.
        let m = 4 + k;
        let outer = qubits(4..m);
        let build = |elision: bool| {
            let mut bd = Builder::new(m).with_elision(elision);
            bd.control(&outer, |bd| {
                bd.around(
                    |bd| { for i in &a { bd.control(&i.controls, |bd| bd.apply(i.gate, i.target))?; } Ok(()) },
                    |bd| { for i in &b { bd.control(&i.controls, |bd| bd.apply(i.gate, i.target))?; } Ok(()) },
                )
            }).unwrap();
            bd.finish().unwrap()
        };
        let elided = build_unitary(&build(true)).unwrap();
        let full = build_unitary(&build(false)).unwrap();
        prop_assert!(equiv(&elided, &full, 1e-10, false).unwrap().equivalent);
    }

    #[test]
    fn stats_additive(a in fragment(4, 15), b in fragment(4, 15)) {
        let ca = Circuit::from_instructions(4, a.clone()).unwrap();
        let cb = Circuit::from_instructions(4, b.clone()).unwrap();
        let mut ab = a;
        ab.extend(b);
        let (sa, sb, s) = (stats_of(&ca), stats_of(&cb), stats_of(&Circuit::from_instructions(4, ab).unwrap()));
        prop_assert_eq!(s.cnot_count, sa.cnot_count + sb.cnot_count);
        prop_assert_eq!(s.single_qubit_count, sa.single_qubit_count + sb.single_qubit_count);
        prop_assert_eq!(s.multi_controlled_count, sa.multi_controlled_count + sb.multi_controlled_count);
        prop_assert_eq!(s.controlled_gate_count, sa.controlled_gate_count + sb.controlled_gate_count);
        prop_assert_eq!(s.total_instructions, sa.total_instructions + sb.total_instructions);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every pass against the dense reference.
    #[test]
    fn passes_match_reference(u in u2(), n in 1usize..=6) {
        let q = qubits(0..n + 2);
        let (cs, t, aux) = (&q[..n], q[n], q[n + 1]);
        let r = reference_cnu(&u, n).unwrap();
        let exact = |f: Vec<Instruction>, want: &Mat2| {
            let got = build_unitary(&Circuit::from_instructions(n + 1, f).unwrap()).unwrap();
            equiv(&got, &reference_cnu(want, n).unwrap(), 1e-8, false).unwrap()
        };
        let on_aux = |f: Vec<Instruction>| {
            let got = build_unitary(&Circuit::from_instructions(n + 2, f).unwrap()).unwrap();
            equiv_on_aux_zero(&got, &r, aux, 1e-8).unwrap()
        };
        let (u_bar, _) = su2_part(&u).unwrap();
        prop_assert!(exact(decompose::mc_su2(&u_bar, cs, t).unwrap(), &u_bar).equivalent);
        prop_assert!(exact(decompose::phase_fix_cn1p(&u, cs, t).unwrap(), &u).equivalent);
        prop_assert!(exact(decompose::mc_u2_baseline(GateKind::U2(u), cs, t).unwrap(), &u).equivalent);
        prop_assert!(on_aux(decompose::mc_u2_rewrite(&u, cs, t, aux).unwrap()).equivalent);
    }

    #[test]
    fn decompose_circuit_matches_reference(g in gate(), n in 1usize..=6, opt in any::<bool>()) {
        let cfg = if opt { DecomposeConfig::optimized() } else { DecomposeConfig::baseline() };
        let out = decompose_circuit(&common::single(g, n), &cfg).unwrap();
        prop_assert!(common::only_cnots_and_singles(&out));
        let full = build_unitary(&out).unwrap();
        let r = reference_cnu(&g.matrix(), n).unwrap();
        let report = if out.num_qubits > n + 1 {
            equiv_on_aux_zero(&full, &r, QubitId(n + 1), 1e-8).unwrap()
        } else {
            equiv(&full, &r, 1e-8, false).unwrap()
        };
        prop_assert!(report.equivalent, "deviation {:e}", report.max_deviation);
    }

    #[test]
    fn count_bounds(n in 3usize..=256, u in u2(), theta in angle()) {
        let cfg = DecomposeConfig::optimized();
        let count = |g| stats_of(&decompose_circuit(&common::single(g, n), &cfg).unwrap()).cnot_count;
        let n64 = n as u64;
        prop_assert!(count(GateKind::Z) <= 12 * n64);
        prop_assert!(count(GateKind::Y) <= 12 * n64);
        prop_assert!(count(GateKind::P(theta)) <= 16 * n64);
        prop_assert!(count(GateKind::RY(theta)) <= 16 * n64);
        prop_assert!(count(GateKind::U2(u)) <= 32 * n64);
        let q = qubits(0..n + 2);
        let dirty = decompose::mcx_split(&q[..n], q[n], q[n + 1], false).unwrap();
        prop_assert!(dirty.iter().filter(|i| i.is_cnot()).count() as u64 <= 16 * n64);
    }

    #[test]
    fn decomposition_is_deterministic(g in gate(), n in 0usize..=10) {
        let cfg = DecomposeConfig::default();
        let a = decompose_circuit(&common::single(g, n), &cfg).unwrap();
        let b = decompose_circuit(&common::single(g, n), &cfg).unwrap();
        prop_assert_eq!(json::write_json(&a, None).unwrap(), json::write_json(&b, None).unwrap());
    }

    #[test]
    fn qasm_round_trip_keeps_stats(g in gate(), n in 0usize..=8) {
        let out = decompose_circuit(&common::single(g, n), &DecomposeConfig::default()).unwrap();
        let text = qasm::write_qasm(&out).unwrap();
        let back = qasm::read_qasm(&text).unwrap();
        prop_assert_eq!(stats_of(&back), stats_of(&out));
        prop_assert_eq!(qasm::write_qasm(&back).unwrap().lines().count(), text.lines().count());
    }

    #[test]
    fn json_round_trip_is_exact(g in gate(), n in 0usize..=8) {
        let out = decompose_circuit(&common::single(g, n), &DecomposeConfig::default()).unwrap();
        let (back, _) = json::read_json(&json::write_json(&out, None).unwrap()).unwrap();
        prop_assert_eq!(back, out);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn prepare_inventory(n in 1usize..=7, seed in any::<u64>()) {
        let c = bench::prepare_circuit(&ParamTree::random(n, seed).unwrap(), true).unwrap();
        let ry = c.instructions.iter().filter(|i| matches!(i.gate, GateKind::RY(_))).count();
        let p = c.instructions.iter().filter(|i| matches!(i.gate, GateKind::P(_))).count();
        prop_assert_eq!(ry, (1 << n) - 1);
        prop_assert_eq!(p, 1 << n);
    }
}

/// Dirty-ancilla transparency over every basis input.
#[test]
fn dirty_ancillas_restored() {
    for k in 3..=5 {
        let m = 2 * k - 1;
        let q = qubits(0..m);
        let f = decompose::mcx_vchain(&q[..k], q[k], &q[k + 1..]).unwrap();
        let mut reference = Circuit::new(m);
        reference.push(Instruction::new(GateKind::X, q[..k].to_vec(), q[k])).unwrap();
        let got = build_unitary(&Circuit::from_instructions(m, f).unwrap()).unwrap();
        assert!(equiv(&got, &build_unitary(&reference).unwrap(), 1e-10, false).unwrap().equivalent);
    }
    for n in 3..=7 {
        let q = qubits(0..n + 2);
        let f = decompose::mcx_split(&q[..n], q[n], q[n + 1], false).unwrap();
        let mut reference = Circuit::new(n + 2);
        reference.push(Instruction::new(GateKind::X, q[..n].to_vec(), q[n])).unwrap();
        let got = build_unitary(&Circuit::from_instructions(n + 2, f).unwrap()).unwrap();
        assert!(equiv(&got, &build_unitary(&reference).unwrap(), 1e-10, false).unwrap().equivalent);
    }
}

#[test]
fn grover_layer_linear_bound() {
    for n in 4..=200 {
        let rec = bench::grover_record(n, true, true).unwrap();
        assert!(rec.cnot_count <= 24 * (n as u64 - 1) + 48, "n={n}: {}", rec.cnot_count);
    }
}

#[test]
fn baseline_growth_tends_to_four() {
    let count = |n: usize| {
        let q = qubits(0..n + 1);
        decompose::mc_u2_baseline(GateKind::H, &q[..n], q[n])
            .unwrap()
            .iter()
            .filter(|i| i.is_cnot())
            .count() as f64
    };
    let ratios: Vec<f64> = [8, 16, 32, 64].iter().map(|&n| count(2 * n) / count(n)).collect();
    for w in ratios.windows(2) {
        assert!(w[1] < w[0], "{ratios:?}");
        assert!((w[1] - 4.0).abs() < (w[0] - 4.0).abs(), "{ratios:?}");
    }
    assert!((ratios[3] - 4.0).abs() < 0.2, "{ratios:?}");
}

#[test]
fn clean_beats_baseline_for_hadamard() {
    let mut first_win = None;
    for n in 2..=12 {
        let c = common::single(GateKind::H, n);
        let clean = stats_of(&decompose_circuit(&c, &DecomposeConfig::optimized()).unwrap()).cnot_count;
        let none = stats_of(&decompose_circuit(&c, &DecomposeConfig::baseline()).unwrap()).cnot_count;
        if none > clean && first_win.is_none() {
            first_win = Some(n);
        }
        if let Some(n0) = first_win {
            assert!(none > clean, "n={n} (first win at {n0}): {none} <= {clean}");
        }
    }
    assert!(first_win.is_some());
}
