//! Circuit container, static validation, traced execution and the presets
//! that rebuild the four-photon W-state circuit.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::SimError;
use crate::fock::{Configuration, ModeId, StateVector, TermJson};
use crate::gates::Gate;

/// Declared primary modes plus an ordered gate list.
///
/// V gates added through [`Circuit::vgate`] get two private aux rails numbered
/// above the primary modes (`modes + 2k + 1`, `modes + 2k + 2` for the k-th
/// V gate). States only carry the primary modes between gates; the aux rails
/// exist while their V gate executes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    modes: usize,
    gates: Vec<Gate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub gate: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate {
            Some(i) => write!(f, "gate {i}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("circuit failed validation ({} diagnostics)", .0.len())]
    Invalid(Vec<Diagnostic>),
    #[error("bad input: {0}")]
    Input(SimError),
    #[error("gate {index} ({desc}): {source}")]
    Gate {
        index: usize,
        desc: String,
        source: SimError,
    },
}

impl Circuit {
    pub fn new(modes: usize) -> Self {
        Circuit {
            modes,
            gates: Vec::new(),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn had(&mut self, mode: u32) -> &mut Self {
        self.push(Gate::Hadamard { mode: ModeId(mode) })
    }

    pub fn pbs(&mut self, in1: u32, in2: u32, out1: u32, out2: u32) -> &mut Self {
        self.push(Gate::Pbs {
            in1: ModeId(in1),
            in2: ModeId(in2),
            out1: ModeId(out1),
            out2: ModeId(out2),
        })
    }

    pub fn pc(&mut self, in1: u32, in2: u32, out: u32) -> &mut Self {
        self.push(Gate::Pc {
            in1: ModeId(in1),
            in2: ModeId(in2),
            out: ModeId(out),
        })
    }

    pub fn cnot(&mut self, control: u32, target: u32) -> &mut Self {
        self.push(Gate::Cnot {
            control: ModeId(control),
            target: ModeId(target),
        })
    }

    /// Appends a V gate, allocating its aux rails from the reserved range.
    pub fn vgate(&mut self, control: u32, target: u32) -> &mut Self {
        let base = (self.modes + 2 * self.vgate_count()) as u32;
        self.push(Gate::VGate {
            control: ModeId(control),
            target: ModeId(target),
            aux1: ModeId(base + 1),
            aux2: ModeId(base + 2),
        })
    }

    /// Appends the gates of `other`, re-allocating aux rails for its V gates.
    pub fn append(&mut self, other: &Circuit) -> &mut Self {
        for gate in &other.gates {
            match *gate {
                Gate::VGate {
                    control, target, ..
                } => {
                    self.vgate(control.label(), target.label());
                }
                g => {
                    self.push(g);
                }
            }
        }
        self
    }

    pub fn vgate_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::VGate { .. }))
            .count()
    }

    /// cNOTs used, counting the one inside every V gate.
    pub fn cnot_count(&self) -> usize {
        self.gates.iter().map(Gate::cnot_count).sum()
    }

    fn aux_modes(&self) -> BTreeSet<ModeId> {
        self.gates
            .iter()
            .filter_map(|g| match *g {
                Gate::VGate { aux1, aux2, .. } => Some([aux1, aux2]),
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// Static checks. An empty result means the circuit is runnable.
    ///
    /// Every primary mode is treated as possibly occupied at the start; a PBS
    /// or PC output that is not one of the gate's own inputs must have been
    /// vacated by an earlier gate.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.modes == 0 {
            out.push(Diagnostic {
                gate: None,
                message: "circuit declares no modes".into(),
            });
        }
        let primary = |m: ModeId| m.label() >= 1 && (m.label() as usize) <= self.modes;
        let mut vgates_seen = 0usize;
        let all_aux = self.aux_modes();
        let mut occupied: BTreeSet<ModeId> = (1..=self.modes as u32).map(ModeId).collect();

        for (index, gate) in self.gates.iter().enumerate() {
            let mut report = |message: String| {
                out.push(Diagnostic {
                    gate: Some(index),
                    message: format!("{gate}: {message}"),
                })
            };
            if let Some(issue) = gate.wiring_issue() {
                report(issue);
                continue;
            }
            match *gate {
                Gate::VGate {
                    control,
                    target,
                    aux1,
                    aux2,
                } => {
                    for m in [control, target] {
                        if !primary(m) {
                            report(format!("references undeclared mode {m}"));
                        }
                    }
                    let base = (self.modes + 2 * vgates_seen) as u32;
                    vgates_seen += 1;
                    if (aux1.label(), aux2.label()) != (base + 1, base + 2) {
                        report(format!(
                            "aux rails ({aux1}, {aux2}) differ from the reserved pair ({}, {})",
                            base + 1,
                            base + 2
                        ));
                    }
                }
                _ => {
                    for m in gate.modes() {
                        if all_aux.contains(&m) {
                            report(format!("uses mode {m} reserved as a V-gate aux rail"));
                        } else if !primary(m) {
                            report(format!("references undeclared mode {m}"));
                        }
                    }
                }
            }
            match *gate {
                Gate::Pbs {
                    in1,
                    in2,
                    out1,
                    out2,
                } => {
                    occupied.remove(&in1);
                    occupied.remove(&in2);
                    for m in [out1, out2] {
                        if occupied.contains(&m) {
                            report(format!("PBS output mode {m} may already be occupied"));
                        }
                    }
                    occupied.insert(out1);
                    occupied.insert(out2);
                }
                Gate::Pc { in1, in2, out } => {
                    occupied.remove(&in1);
                    occupied.remove(&in2);
                    if occupied.contains(&out) {
                        report(format!("PC output mode {out} may already be occupied"));
                    }
                    occupied.insert(out);
                }
                _ => {}
            }
        }
        out
    }

    pub fn run(&self, input: &Configuration) -> Result<ExecutionTrace, RunError> {
        self.run_state(StateVector::basis(input.clone()))
    }

    /// Runs from an arbitrary superposition over the primary modes.
    pub fn run_state(&self, initial: StateVector) -> Result<ExecutionTrace, RunError> {
        let diagnostics = self.validate();
        if !diagnostics.is_empty() {
            return Err(RunError::Invalid(diagnostics));
        }
        if initial.width() != self.modes {
            return Err(RunError::Input(SimError::WidthMismatch {
                left: self.modes,
                right: initial.width(),
            }));
        }
        let mut steps = Vec::with_capacity(self.gates.len());
        let mut state = initial.clone();
        for (index, gate) in self.gates.iter().enumerate() {
            state = gate.apply(&state).map_err(|source| RunError::Gate {
                index,
                desc: gate.to_string(),
                source,
            })?;
            steps.push(TraceStep {
                gate_index: index,
                desc: gate.to_string(),
                state: state.clone(),
            });
        }
        Ok(ExecutionTrace {
            initial,
            steps,
            final_state: state,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub gate_index: usize,
    pub desc: String,
    pub state: StateVector,
}

/// Full state after every gate, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExecutionTrace {
    pub initial: StateVector,
    pub steps: Vec<TraceStep>,
    pub final_state: StateVector,
}

#[derive(Serialize, Deserialize)]
struct InputJson {
    state: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    gate: usize,
    desc: String,
    state: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    input: InputJson,
    steps: Vec<StepJson>,
    #[serde(rename = "final")]
    final_state: Vec<TermJson>,
}

impl ExecutionTrace {
    fn to_json_doc(&self) -> TraceJson {
        TraceJson {
            input: InputJson {
                state: self.initial.to_json_terms(),
            },
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    gate: s.gate_index,
                    desc: s.desc.clone(),
                    state: s.state.to_json_terms(),
                })
                .collect(),
            final_state: self.final_state.to_json_terms(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_doc()).expect("trace serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_doc()).expect("trace serializes")
    }

    /// Reads a trace written by [`ExecutionTrace::to_json_string`] (or a
    /// hand-written golden file in the same schema).
    pub fn from_json_str(text: &str) -> Result<Self, TraceFormatError> {
        let doc: TraceJson = serde_json::from_str(text)?;
        let initial = StateVector::from_json_terms(&doc.input.state, 0)?;
        let width = initial.width();
        let steps = doc
            .steps
            .iter()
            .map(|s| {
                Ok(TraceStep {
                    gate_index: s.gate,
                    desc: s.desc.clone(),
                    state: StateVector::from_json_terms(&s.state, width)?,
                })
            })
            .collect::<Result<Vec<_>, SimError>>()?;
        let final_state = StateVector::from_json_terms(&doc.final_state, width)?;
        Ok(ExecutionTrace {
            initial,
            steps,
            final_state,
        })
    }

    /// Step-by-step comparison against a reference trace.
    pub fn compare(&self, golden: &ExecutionTrace, tolerance: f64) -> TraceComparison {
        let mut mismatches = Vec::new();
        let mut max_deviation: f64 = 0.0;
        if self.steps.len() != golden.steps.len() {
            mismatches.push(format!(
                "step count {} differs from reference {}",
                self.steps.len(),
                golden.steps.len()
            ));
            max_deviation = f64::INFINITY;
        }
        let mut pairs = vec![("input".to_string(), &self.initial, &golden.initial)];
        for (ours, theirs) in self.steps.iter().zip(&golden.steps) {
            pairs.push((
                format!("step {} ({})", ours.gate_index, ours.desc),
                &ours.state,
                &theirs.state,
            ));
        }
        pairs.push(("final".to_string(), &self.final_state, &golden.final_state));

        for (label, ours, theirs) in pairs {
            match ours.max_abs_diff(theirs) {
                Ok(d) => {
                    max_deviation = max_deviation.max(d);
                    if d >= tolerance {
                        mismatches.push(format!("{label}: deviation {d:e}"));
                    }
                }
                Err(e) => {
                    max_deviation = f64::INFINITY;
                    mismatches.push(format!("{label}: {e}"));
                }
            }
        }
        TraceComparison {
            max_deviation,
            mismatches,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceComparison {
    pub max_deviation: f64,
    pub mismatches: Vec<String>,
}

impl TraceComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum TraceFormatError {
    #[error("malformed trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed trace state: {0}")]
    State(#[from] SimError),
}

/// Number of primary modes in the W-state circuit.
pub const W4_MODES: usize = 4;

/// Input photons on modes 1..=4: H, V, H, V.
pub const W4_INPUT: &str = "HVHV";

/// (control, target) of each V gate, in application order.
pub const U_STAGE_PAIRS: [(u32, u32); 4] = [(4, 2), (1, 4), (2, 3), (3, 1)];

/// Hadamards on modes 1 and 3, then cNOT 1→2 and cNOT 3→4.
///
/// With input `HVHV` each pair becomes (|HV⟩+|VH⟩)/√2 and the product is the
/// equal superposition of HVHV, HVVH, VHHV and VHVH. The placement of the
/// H/V inputs and of the Hadamards is not fixed by the circuit drawing alone;
/// this is the assignment that yields that product state.
pub fn build_bell_stage() -> Circuit {
    let mut c = Circuit::new(W4_MODES);
    c.had(1).had(3).cnot(1, 2).cnot(3, 4);
    c
}

/// The four V gates mapping the Bell-pair product onto the W state.
///
/// Operator products are written right to left, so the rightmost factor
/// acts first. Each subscript pair is read as (control, target): that is the
/// only reading under which the intermediate states come out as
/// HHHV+HVVH+VHHV+VHVH, then HHHV+HVVH+VHHH+VHVH, then HHHV+HVHH+VHHH+VHVH.
pub fn build_u_stage() -> Circuit {
    let mut c = Circuit::new(W4_MODES);
    for (control, target) in U_STAGE_PAIRS {
        c.vgate(control, target);
    }
    c
}

/// Same gates as [`build_u_stage`] with each pair read as (target, control).
/// Kept as a negative control; it does not reproduce the reference trace.
pub fn build_u_stage_target_first() -> Circuit {
    let mut c = Circuit::new(W4_MODES);
    for (control, target) in U_STAGE_PAIRS {
        c.vgate(target, control);
    }
    c
}

/// Bell stage followed by the V-gate stage: six cNOTs in total.
pub fn build_w4_circuit() -> Circuit {
    let mut c = build_bell_stage();
    c.append(&build_u_stage());
    c
}
