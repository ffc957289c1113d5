mod common;

use common::*;
use wsim_core::analysis::{fidelity, w_state};
use wsim_core::circuit::{
    build_bell_stage, build_u_stage, build_u_stage_target_first, build_w4_circuit, W4_INPUT,
};
use wsim_core::fock::StateVector;
use wsim_core::qcdl;

const TOL: f64 = 1e-12;

#[test]
fn bell_stage_reproduces_product_of_bell_pairs() {
    let out = build_bell_stage().run(&cfg(W4_INPUT)).unwrap().final_state;
    let golden = golden_state("bell_product.json");
    assert_eq!(config_texts(&out), config_texts(&golden));
    assert!(out.max_abs_diff(&golden).unwrap() < TOL);
}

#[test]
fn w4_circuit_produces_w_state() {
    let out = build_w4_circuit().run(&cfg(W4_INPUT)).unwrap().final_state;
    let golden = golden_state("w4.json");
    assert_eq!(config_texts(&out), ["HHHV", "HHVH", "HVHH", "VHHH"]);
    assert!(out.max_abs_diff(&golden).unwrap() < TOL);
    assert!((fidelity(&out, &w_state(4).unwrap()).unwrap() - 1.0).abs() < TOL);
}

#[test]
fn v_gate_steps_match_reference_trace() {
    let golden = golden_trace("u_stage_trace.json");
    let ours = build_u_stage().run_state(golden.initial.clone()).unwrap();
    let cmp = ours.compare(&golden, TOL);
    assert!(cmp.passed(), "{:?}", cmp.mismatches);
    for (a, b) in ours.steps.iter().zip(&golden.steps) {
        assert_eq!(config_texts(&a.state), config_texts(&b.state));
        assert_eq!(a.desc, b.desc);
    }

    // Same states appear inside the full circuit after the four V gates.
    let full = build_w4_circuit().run(&cfg(W4_INPUT)).unwrap();
    assert!(full.steps[3].state.max_abs_diff(&golden.initial).unwrap() < TOL);
    for (k, step) in golden.steps.iter().enumerate() {
        let d = full.steps[4 + k].state.max_abs_diff(&step.state).unwrap();
        assert!(d < TOL, "V gate {k}: deviation {d}");
    }
}

#[test]
fn target_first_reading_misses_reference_trace() {
    let golden = golden_trace("u_stage_trace.json");
    let ours = build_u_stage_target_first()
        .run_state(golden.initial.clone())
        .unwrap();
    let cmp = ours.compare(&golden, TOL);
    assert!(!cmp.passed());
    // Already the first V gate disagrees: HVHV goes to HVHH, not HHHV.
    assert!(ours.steps[0].state.amplitude(&cfg("HVHH")).re > 0.49);
    assert!(cmp.mismatches.iter().any(|m| m.starts_with("step 0")));
}

#[test]
fn shipped_circuit_files_match_presets() {
    assert_eq!(
        qcdl::parse(&read_testdata("w4_circuit.wqc")).unwrap(),
        build_w4_circuit()
    );
    assert_eq!(
        qcdl::parse(&read_testdata("u_stage.wqc")).unwrap(),
        build_u_stage()
    );
    assert_eq!(
        qcdl::parse(&read_testdata("u_stage_target_first.wqc")).unwrap(),
        build_u_stage_target_first()
    );
}

#[test]
fn every_intermediate_state_is_normalized_with_four_photons() {
    let trace = build_w4_circuit().run(&cfg(W4_INPUT)).unwrap();
    for step in &trace.steps {
        assert!((step.state.norm() - 1.0).abs() < TOL, "{}", step.desc);
        assert_eq!(step.state.photon_numbers(), [4], "{}", step.desc);
    }
}

#[test]
fn u_stage_is_a_bijection_on_bell_configurations() {
    let images: Vec<String> = ["HVHV", "HVVH", "VHHV", "VHVH"]
        .iter()
        .map(|c| {
            let out = build_u_stage().run(&cfg(c)).unwrap().final_state;
            assert_eq!(out.len(), 1);
            config_texts(&out).remove(0)
        })
        .collect();
    let mut sorted = images.clone();
    sorted.sort();
    assert_eq!(sorted, ["HHHV", "HHVH", "HVHH", "VHHH"]);
}

#[test]
fn first_v_gate_alone() {
    let mut first = wsim_core::Circuit::new(4);
    first.vgate(4, 2);
    let out = first
        .run_state(golden_state("bell_product.json"))
        .unwrap()
        .final_state;
    assert_eq!(config_texts(&out), ["HHHV", "HVVH", "VHHV", "VHVH"]);
}

#[test]
fn traces_serialize_identically_across_runs() {
    let a = build_w4_circuit()
        .run(&cfg(W4_INPUT))
        .unwrap()
        .to_json_string();
    let b = build_w4_circuit()
        .run(&cfg(W4_INPUT))
        .unwrap()
        .to_json_string();
    assert_eq!(a, b);
}

#[test]
fn all_horizontal_input_through_full_circuit() {
    // Each HH pair becomes (HH + VV)/√2 before the V gates act.
    let trace = build_w4_circuit().run(&cfg("HHHH")).unwrap();
    let reference = DenseReference { modes: 4 };
    let dense = reference.run(&build_w4_circuit(), 0);
    let expected = StateVector::from_terms(
        4,
        dense
            .iter()
            .enumerate()
            .map(|(i, a)| (cfg(&reference.label(i)), *a)),
    )
    .unwrap();
    assert!(trace.final_state.max_abs_diff(&expected).unwrap() < TOL);
}
