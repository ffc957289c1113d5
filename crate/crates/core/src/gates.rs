//! Per-configuration rules for each optical element.
//!
//! Every element is defined on a single basis configuration and extended
//! linearly through [`StateVector::map_basis`]. The composite V gate is built
//! from the same primitives in three stages (split, cNOT on the auxiliary
//! rails, merge); [`apply_vgate_table`] is its direct truth-table counterpart.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::fock::{Amplitude, Configuration, ModeId, Occupancy, Polarization, StateVector};

/// Rescaling applied by a cNOT when one of its inputs is vacuum. Fixed to 1.
pub const ETA: Amplitude = Complex64::new(1.0, 0.0);

/// Sign picked up on reflection at a polarizing beamsplitter.
pub const PBS_REFLECTION_PHASE: Amplitude = Complex64::new(1.0, 0.0);

/// One circuit element and its mode wiring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Hadamard {
        mode: ModeId,
    },
    /// Transmits H (`in1 → out1`, `in2 → out2`) and reflects V
    /// (`in1 → out2`, `in2 → out1`). Ports may be reused in place, e.g.
    /// `in1 == out1`.
    Pbs {
        in1: ModeId,
        in2: ModeId,
        out1: ModeId,
        out2: ModeId,
    },
    /// Moves the photon of whichever input is occupied into `out`.
    Pc {
        in1: ModeId,
        in2: ModeId,
        out: ModeId,
    },
    Cnot {
        control: ModeId,
        target: ModeId,
    },
    /// Flips `target` from V to H when both ports are V. `aux1` and `aux2`
    /// are the temporary rails used inside the gate.
    VGate {
        control: ModeId,
        target: ModeId,
        aux1: ModeId,
        aux2: ModeId,
    },
}

impl Gate {
    /// Every mode the gate touches, aux rails included.
    pub fn modes(&self) -> Vec<ModeId> {
        match *self {
            Gate::Hadamard { mode } => vec![mode],
            Gate::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => vec![in1, in2, out1, out2],
            Gate::Pc { in1, in2, out } => vec![in1, in2, out],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::VGate {
                control,
                target,
                aux1,
                aux2,
            } => vec![control, target, aux1, aux2],
        }
    }

    /// Number of cNOT gates this element contains.
    pub fn cnot_count(&self) -> usize {
        match self {
            Gate::Cnot { .. } | Gate::VGate { .. } => 1,
            _ => 0,
        }
    }

    /// Describes a wiring that reuses a mode where it must not, if any.
    pub fn wiring_issue(&self) -> Option<String> {
        let clash = |a: ModeId, b: ModeId| a == b;
        match *self {
            Gate::Hadamard { .. } => None,
            Gate::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => {
                if clash(in1, in2) || clash(out1, out2) {
                    Some("self-referencing gate: PBS ports must be distinct".into())
                } else {
                    None
                }
            }
            Gate::Pc { in1, in2, .. } => {
                clash(in1, in2).then(|| "self-referencing gate: PC inputs must be distinct".into())
            }
            Gate::Cnot { control, target } => {
                clash(control, target).then(|| "self-referencing gate".into())
            }
            Gate::VGate {
                control,
                target,
                aux1,
                aux2,
            } => {
                let modes = [control, target, aux1, aux2];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| modes[i] != modes[j]));
                (!distinct).then(|| "self-referencing gate: V-gate modes must be distinct".into())
            }
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        match *self {
            Gate::Hadamard { mode } => apply_hadamard(state, mode),
            Gate::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => apply_pbs(state, in1, in2, out1, out2),
            Gate::Pc { in1, in2, out } => apply_pc(state, in1, in2, out),
            Gate::Cnot { control, target } => apply_cnot(state, control, target),
            Gate::VGate {
                control,
                target,
                aux1,
                aux2,
            } => apply_vgate_composite(state, control, target, aux1, aux2),
        }
    }
}

/// Circuit-language form of the gate. Aux rails of a V gate are implicit.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Hadamard { mode } => write!(f, "had {mode}"),
            Gate::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => write!(f, "pbs {in1} {in2} -> {out1} {out2}"),
            Gate::Pc { in1, in2, out } => write!(f, "pc {in1} {in2} -> {out}"),
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::VGate {
                control, target, ..
            } => write!(f, "vgate {control} {target}"),
        }
    }
}

fn deterministic(config: Configuration) -> StateVector {
    StateVector::basis(config)
}

/// Half-wave plate at 22.5°: H → (H+V)/√2, V → (H−V)/√2, vacuum unchanged.
pub fn apply_hadamard(state: &StateVector, mode: ModeId) -> Result<StateVector> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    state.map_basis(|config| {
        let pol = match config.get(mode)? {
            Occupancy::Vacuum => return Ok(deterministic(config.clone())),
            Occupancy::Photon(p) => p,
        };
        let mut to_h = config.clone();
        to_h.set(mode, Occupancy::H)?;
        let mut to_v = config.clone();
        to_v.set(mode, Occupancy::V)?;
        let v_sign = match pol {
            Polarization::H => s,
            Polarization::V => -s,
        };
        StateVector::from_terms(
            config.width(),
            [
                (to_h, Amplitude::new(s, 0.0)),
                (to_v, Amplitude::new(v_sign, 0.0)),
            ],
        )
    })
}

/// Routing of one configuration through a PBS; returns the image and its phase.
pub fn pbs_route(
    config: &Configuration,
    in1: ModeId,
    in2: ModeId,
    out1: ModeId,
    out2: ModeId,
) -> Result<(Configuration, Amplitude)> {
    let mut next = config.clone();
    let first = next.take(in1)?;
    let second = next.take(in2)?;
    // Outputs that are not also inputs must be empty on arrival; checked by place().
    let mut phase = Amplitude::new(1.0, 0.0);
    if let Occupancy::Photon(p) = first {
        match p {
            Polarization::H => next.place(out1, p)?,
            Polarization::V => {
                next.place(out2, p)?;
                phase *= PBS_REFLECTION_PHASE;
            }
        }
    }
    if let Occupancy::Photon(p) = second {
        match p {
            Polarization::H => next.place(out2, p)?,
            Polarization::V => {
                next.place(out1, p)?;
                phase *= PBS_REFLECTION_PHASE;
            }
        }
    }
    Ok((next, phase))
}

pub fn apply_pbs(
    state: &StateVector,
    in1: ModeId,
    in2: ModeId,
    out1: ModeId,
    out2: ModeId,
) -> Result<StateVector> {
    state.map_basis(|config| {
        let (next, phase) = pbs_route(config, in1, in2, out1, out2)?;
        StateVector::from_terms(next.width(), [(next, phase)])
    })
}

pub fn pc_merge(
    config: &Configuration,
    in1: ModeId,
    in2: ModeId,
    out: ModeId,
) -> Result<Configuration> {
    let mut next = config.clone();
    let first = next.take(in1)?;
    let second = next.take(in2)?;
    match (first, second) {
        (Occupancy::Photon(_), Occupancy::Photon(_)) => Err(SimError::PcCollision { in1, in2 }),
        (Occupancy::Photon(p), Occupancy::Vacuum) | (Occupancy::Vacuum, Occupancy::Photon(p)) => {
            next.place(out, p)?;
            Ok(next)
        }
        (Occupancy::Vacuum, Occupancy::Vacuum) => {
            // Touch `out` so an undeclared output is still reported.
            next.get(out)?;
            Ok(next)
        }
    }
}

pub fn apply_pc(state: &StateVector, in1: ModeId, in2: ModeId, out: ModeId) -> Result<StateVector> {
    state.map_basis(|config| Ok(deterministic(pc_merge(config, in1, in2, out)?)))
}

/// cNOT on one configuration, with the η factor of the vacuum pass-through.
pub fn cnot_basis(
    config: &Configuration,
    control: ModeId,
    target: ModeId,
) -> Result<(Configuration, Amplitude)> {
    match (config.get(control)?, config.get(target)?) {
        (Occupancy::Photon(c), Occupancy::Photon(t)) => {
            let mut next = config.clone();
            if c == Polarization::V {
                next.set(target, Occupancy::Photon(t.flipped()))?;
            }
            Ok((next, Amplitude::new(1.0, 0.0)))
        }
        _ => Ok((config.clone(), ETA)),
    }
}

pub fn apply_cnot(state: &StateVector, control: ModeId, target: ModeId) -> Result<StateVector> {
    state.map_basis(|config| {
        let (next, amp) = cnot_basis(config, control, target)?;
        StateVector::from_terms(next.width(), [(next, amp)])
    })
}

/// The three intermediate states of a composite V gate, over the widened
/// mode set that includes both aux rails.
#[derive(Clone, Debug, PartialEq)]
pub struct VGateStages {
    /// After the two input PBSs: V photons moved onto the aux rails.
    pub split: StateVector,
    /// After the cNOT between the aux rails.
    pub cnot: StateVector,
    /// After the merging PBS (control side) and PC (target side).
    pub merged: StateVector,
}

pub fn vgate_stages(
    state: &StateVector,
    control: ModeId,
    target: ModeId,
    aux1: ModeId,
    aux2: ModeId,
) -> Result<VGateStages> {
    let width = state
        .width()
        .max(aux1.label() as usize)
        .max(aux2.label() as usize);
    let wide = state.widened(width);
    ensure_vacuum(&wide, &[aux1, aux2])?;

    let split = apply_pbs(&wide, control, aux1, control, aux1)?;
    let split = apply_pbs(&split, target, aux2, target, aux2)?;
    let cnot = apply_cnot(&split, aux1, aux2)?;
    let merged = apply_pbs(&cnot, control, aux1, control, aux1)?;
    let merged = apply_pc(&merged, target, aux2, target)?;
    ensure_vacuum(&merged, &[aux1, aux2])?;

    Ok(VGateStages {
        split,
        cnot,
        merged,
    })
}

/// Composite V gate: split on PBSs, cNOT the aux rails, merge back.
/// The aux rails are vacuum before and after; extra modes are dropped again.
pub fn apply_vgate_composite(
    state: &StateVector,
    control: ModeId,
    target: ModeId,
    aux1: ModeId,
    aux2: ModeId,
) -> Result<StateVector> {
    vgate_stages(state, control, target, aux1, aux2)?
        .merged
        .narrowed(state.width())
}

fn ensure_vacuum(state: &StateVector, modes: &[ModeId]) -> Result<()> {
    for config in state.configurations() {
        for &mode in modes {
            if !config.get(mode)?.is_vacuum() {
                return Err(SimError::AuxOccupied { mode });
            }
        }
    }
    Ok(())
}

/// Direct action of the V gate on a (control, target) pair.
pub fn vgate_truth_table(pair: (Occupancy, Occupancy)) -> (Occupancy, Occupancy) {
    match pair {
        (Occupancy::V, Occupancy::V) => (Occupancy::V, Occupancy::H),
        other => other,
    }
}

/// Linear extension of [`vgate_truth_table`] over a state.
pub fn apply_vgate_table(
    state: &StateVector,
    control: ModeId,
    target: ModeId,
) -> Result<StateVector> {
    state.map_basis(|config| {
        let (c, t) = vgate_truth_table((config.get(control)?, config.get(target)?));
        let mut next = config.clone();
        next.set(control, c)?;
        next.set(target, t)?;
        Ok(deterministic(next))
    })
}
