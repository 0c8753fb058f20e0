// Copyright 2026 The Paradox Authors
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

mod common;

use std::f64::consts::PI;

use paradox_core::inference::{all_walks, classify, infer_step, walk, TruthToken};
use paradox_core::numerics::{c, ComplexMatrix, StateVector};
use paradox_core::presets::Preset;
use paradox_core::quantization::{quantize_cycle, quantize_double_liar_a, QuantumModel};
use paradox_core::sentence_dsl::{Claim, SentenceSystem};
use paradox_core::simulator::{create_session, default_model, Session};
use proptest::prelude::*;
use rand::Rng;

fn system_from(targets: &[(usize, bool)]) -> SentenceSystem {
    SentenceSystem::new(
        targets
            .iter()
            .enumerate()
            .map(|(i, &(target, asserts_true))| Claim {
                subject: i + 1,
                target,
                asserts_true,
            })
            .collect(),
    )
    .unwrap()
}

/// Every system with `n` sentences.
fn all_systems(n: usize) -> Vec<SentenceSystem> {
    let choices = 2 * n;
    let total = choices.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let claims: Vec<(usize, bool)> = (0..n)
                .map(|_| {
                    let pick = code % choices;
                    code /= choices;
                    (pick / 2 + 1, pick.is_multiple_of(2))
                })
                .collect();
            system_from(&claims)
        })
        .collect()
}

fn arb_system(max: usize) -> impl Strategy<Value = SentenceSystem> {
    (1usize..=max).prop_flat_map(|n| {
        prop::collection::vec((1..=n, any::<bool>()), n).prop_map(|t| system_from(&t))
    })
}

fn models_for_presets() -> Vec<(String, QuantumModel)> {
    let mut out: Vec<(String, QuantumModel)> = Preset::ALL
        .iter()
        .map(|p| (p.name().to_string(), default_model(&p.system()).unwrap()))
        .collect();
    out.push((
        "double-liar-a (flat)".into(),
        quantize_cycle(&Preset::DoubleLiarA.system(), TruthToken::new(1, true)).unwrap(),
    ));
    for p in [Preset::DoubleLiarB, Preset::DoubleLiarC] {
        out.push((
            format!("{} from 1:false", p.name()),
            quantize_cycle(&p.system(), TruthToken::new(1, false)).unwrap(),
        ));
    }
    out
}

// ---- inference ----

#[test]
fn walks_have_valid_structure_exhaustively() {
    for n in 1..=3 {
        for system in all_systems(n) {
            for w in all_walks(&system) {
                assert!(w.steps().len() <= 2 * n);
                let cycle = w.cycle();
                for k in 0..cycle.len() {
                    let next = infer_step(&system, cycle[k]).unwrap();
                    assert_eq!(next, cycle[(k + 1) % cycle.len()]);
                }
                for tok in w.tail() {
                    assert_eq!(w.steps().iter().filter(|&&s| s == *tok).count(), 1);
                    assert!(!cycle.contains(tok));
                }
            }
        }
    }
}

#[test]
fn paradoxical_iff_some_walk_is_contradictory_exhaustively() {
    for n in 1..=4 {
        for system in all_systems(n) {
            let paradoxical = classify(&system).unwrap().consistent_assignments.is_empty();
            let contradictory = all_walks(&system).iter().any(|w| w.is_contradictory());
            assert_eq!(paradoxical, contradictory, "{system:?}");
        }
    }
}

#[test]
fn no_assignment_agrees_with_a_contradictory_cycle() {
    for system in all_systems(3) {
        for w in all_walks(&system).iter().filter(|w| w.is_contradictory()) {
            for a in classify(&system).unwrap().consistent_assignments {
                assert!(w.cycle().iter().any(|t| a[t.sentence - 1] != t.value));
            }
        }
    }
}

#[test]
fn preset_cycle_lengths() {
    let a = Preset::DoubleLiarA.system();
    for w in all_walks(&a) {
        assert_eq!(w.cycle_len(), 4);
    }
    for p in [Preset::DoubleLiarB, Preset::DoubleLiarC] {
        for w in all_walks(&p.system()) {
            assert_eq!(w.cycle_len(), 2, "{p:?}");
        }
    }
}

proptest! {
    #[test]
    fn consistent_assignment_count_is_zero_or_power_of_two(system in arb_system(10)) {
        let k = classify(&system).unwrap().consistent_assignments.len();
        prop_assert!(k == 0 || (k >= 2 && k.is_power_of_two()), "{}", k);
    }

    #[test]
    fn walk_terminates_within_bound(system in arb_system(20), s in 1usize..=20, v in any::<bool>()) {
        let s = (s - 1) % system.len() + 1;
        let w = walk(&system, TruthToken::new(s, v)).unwrap();
        prop_assert!(w.steps().len() <= 2 * system.len());
        prop_assert!(w.cycle_len() >= 1);
    }
}

// ---- quantization ----

fn check_model_invariants(name: &str, m: &QuantumModel) {
    let h = m.hamiltonian();
    assert!(h.hermiticity_defect() <= 1e-10, "{name}");
    assert!(m.u_discrete().is_unitary(), "{name}");
    assert!(m.psi0().is_normalized(), "{name}");
    let h_psi = h.apply(m.psi0()).unwrap();
    assert!(
        h_psi.norm() <= 1e-10,
        "{name}: |H psi0| = {:e}",
        h_psi.norm()
    );

    for k in 0..100 {
        let t = 4.0 * PI * k as f64 / 99.0;
        let moved = m.evolution_at(t).apply(m.psi0()).unwrap();
        assert!(moved.distance(m.psi0()) <= 1e-9, "{name} at t = {t}");
    }

    let cycle = m.cycle_projector();
    let mut total = ComplexMatrix::zeros(m.dim(), m.dim());
    let projectors: Vec<(TruthToken, &ComplexMatrix)> = m.projectors().collect();
    for (token, p) in &projectors {
        assert!(p.is_projector(), "{name}: {token}");
        total = &total + &(*p * &cycle);
        if let Some(q) = m.projector(TruthToken::new(token.sentence, !token.value)) {
            assert!((*p * q).max_abs() <= 1e-10, "{name}: {token}");
        }
        for (other, q) in &projectors {
            if other != token {
                assert!(
                    (&(*p * *q) * &cycle).max_abs() <= 1e-10,
                    "{name}: {token} {other}"
                );
            }
        }
    }
    assert!(total.max_abs_diff(&cycle) <= 1e-10, "{name}");

    let step = m.evolution_at(m.tau());
    assert!(step.max_abs_diff(m.u_discrete()) <= 1e-9, "{name}");
    let len = m.cycle_len();
    for k in 0..len {
        let next = step.apply(&m.cycle_state(k)).unwrap();
        assert!(next.max_abs_diff(&m.cycle_state(k + 1)) <= 1e-9, "{name}");
    }
    let full = m.evolution_at(len as f64 * m.tau());
    assert!((&full * &cycle).max_abs_diff(&cycle) <= 1e-9, "{name}");

    for t in [0.3, 1.7, 5.0] {
        let u = m.evolution_at(t);
        let comm = &(&u * m.u_discrete()) - &(m.u_discrete() * &u);
        assert!(comm.max_abs() <= 1e-9, "{name}");
    }
}

#[test]
fn preset_models_satisfy_invariants() {
    for (name, m) in models_for_presets() {
        check_model_invariants(&name, &m);
    }
}

#[test]
fn case_a_token_weights_are_one_quarter() {
    let (m, _) = quantize_double_liar_a().unwrap();
    for (token, p) in m.projectors() {
        let w = p.apply(m.psi0()).unwrap().norm_sqr();
        assert!((w - 0.25).abs() <= 1e-15, "{token}");
    }
}

#[test]
fn case_a_frequencies() {
    // Every entry of U(t) restricted to the cycle span is a combination of
    // exp(-i w t) with w in the spectrum of H; the spectrum on the span is
    // {0, 1, -1, -2} and zero elsewhere.
    let (m, _) = quantize_double_liar_a().unwrap();
    let idx = m.cycle_indices().to_vec();
    let sub = m.hamiltonian().submatrix(&idx);
    let mut freqs: Vec<f64> = paradox_core::numerics::eig_normal(&sub)
        .unwrap()
        .values()
        .iter()
        .map(|z| z.re)
        .collect();
    freqs.sort_by(f64::total_cmp);
    for (g, w) in freqs.iter().zip([-2.0, -1.0, 0.0, 1.0]) {
        assert!((g - w).abs() <= 1e-9, "{freqs:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_systems_satisfy_model_invariants(system in arb_system(8)) {
        let m = default_model(&system).unwrap();
        check_model_invariants("random", &m);
    }
}

// ---- simulator ----

fn random_cycle_state(m: &QuantumModel, seed: u64) -> StateVector {
    let mut rng = common::rng(seed);
    let mut amps = vec![c(0.0, 0.0); m.dim()];
    for &i in m.cycle_indices() {
        amps[i] = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    }
    StateVector::from_amplitudes(amps).normalized().unwrap()
}

#[test]
fn classical_and_quantum_steps_agree() {
    for p in Preset::ALL {
        let system = p.system();
        let base = create_session(&system).unwrap();
        for &token in base.model().basis_labels() {
            let mut s = base.clone();
            s.hypothesize(token.sentence, token.value).unwrap();
            let mut expected = token;
            for _ in 0..16 {
                s.evolve(s.model().tau()).unwrap();
                expected = infer_step(&system, expected).unwrap();
                let k = s.model().position_of(expected).unwrap();
                assert!(
                    s.state().max_abs_diff(&s.model().cycle_state(k)) <= 1e-9,
                    "{p:?} from {token}"
                );
            }
        }
    }
}

#[test]
fn case_a_period_is_two_pi() {
    let base = create_session(&Preset::DoubleLiarA.system()).unwrap();
    let m = base.model();
    for seed in 0..10 {
        let psi = random_cycle_state(m, seed);
        let back = m.evolve_state(&psi, 2.0 * PI);
        assert!(back.max_abs_diff(&psi) <= 1e-9);
    }
}

#[test]
fn unmeasured_trace_is_flat() {
    for p in Preset::ALL {
        let s = create_session(&p.system()).unwrap();
        let table = s.trace(0.0, 4.0 * PI, 0.05).unwrap();
        let first = table.rows[0].probabilities.clone();
        for row in &table.rows {
            for (a, b) in row.probabilities.iter().zip(&first) {
                assert!((a - b).abs() <= 1e-9, "{p:?} at {}", row.t);
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Op {
    Hypothesize(usize, bool),
    Sample(usize, u64),
    Evolve(f64),
    Release,
    Trace,
}

fn arb_op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (1usize..=2, any::<bool>()).prop_map(|(s, v)| Op::Hypothesize(s, v)),
        (1usize..=2, any::<u64>()).prop_map(|(s, seed)| Op::Sample(s, seed)),
        (0.0f64..10.0).prop_map(Op::Evolve),
        Just(Op::Release),
        Just(Op::Trace),
    ]
}

/// Applies `op` and returns the number of log entries it should add.
fn apply(s: &mut Session, op: &Op) -> usize {
    let n = s.model().sentence_count();
    match *op {
        Op::Hypothesize(sentence, value) => {
            usize::from(s.hypothesize((sentence - 1) % n + 1, value).is_ok())
        }
        Op::Sample(sentence, seed) => {
            s.measure_sample((sentence - 1) % n + 1, seed).unwrap();
            1
        }
        Op::Evolve(dt) => {
            s.evolve(dt).unwrap();
            1
        }
        Op::Release => {
            s.release();
            1
        }
        Op::Trace => {
            let before = (s.state().clone(), s.time(), s.log().len());
            s.trace(0.0, 3.0, 0.5).unwrap();
            assert_eq!(before, (s.state().clone(), s.time(), s.log().len()));
            0
        }
    }
}

proptest! {
    #[test]
    fn norm_is_preserved(
        preset in 0usize..4,
        ops in prop::collection::vec(arb_op(), 0..30),
    ) {
        let mut s = create_session(&Preset::ALL[preset].system()).unwrap();
        let mut expected_log = 0;
        for op in &ops {
            let before = s.time();
            expected_log += apply(&mut s, op);
            prop_assert!((s.state().norm() - 1.0).abs() <= 1e-9);
            let total: f64 = s.probabilities().iter().map(|(_, p)| p).sum();
            prop_assert!(total <= 1.0 + 1e-9);
            if !matches!(op, Op::Release) {
                prop_assert!(s.time() >= before);
            }
        }
        prop_assert_eq!(s.log().len(), expected_log);
    }
}
