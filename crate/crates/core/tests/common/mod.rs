#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wsim_core::circuit::{Circuit, ExecutionTrace};
use wsim_core::fock::{Amplitude, Configuration, Occupancy, StateVector, TermJson};
use wsim_core::Gate;

pub fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
}

pub fn read_testdata(name: &str) -> String {
    std::fs::read_to_string(testdata(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

pub fn golden_state(name: &str) -> StateVector {
    let terms: Vec<TermJson> = serde_json::from_str(&read_testdata(name)).unwrap();
    StateVector::from_json_terms(&terms, 0).unwrap()
}

pub fn golden_trace(name: &str) -> ExecutionTrace {
    ExecutionTrace::from_json_str(&read_testdata(name)).unwrap()
}

pub fn cfg(s: &str) -> Configuration {
    s.parse().unwrap()
}

pub fn config_texts(state: &StateVector) -> Vec<String> {
    state.configurations().map(|c| c.to_string()).collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn random_amplitude(rng: &mut StdRng) -> Amplitude {
    Amplitude::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Normalized random superposition over configurations drawn by `draw`.
pub fn random_state<F>(rng: &mut StdRng, width: usize, mut draw: F) -> StateVector
where
    F: FnMut(&mut StdRng) -> Configuration,
{
    loop {
        let n_terms = rng.random_range(1..=8);
        let terms: Vec<_> = (0..n_terms)
            .map(|_| {
                let c = draw(rng);
                (c, random_amplitude(rng))
            })
            .collect();
        let s = StateVector::from_terms(width, terms).unwrap();
        let norm = s.norm();
        if norm > 1e-3 {
            return s.scaled(Amplitude::new(1.0 / norm, 0.0)).unwrap();
        }
    }
}

pub fn random_occupancy(rng: &mut StdRng) -> Occupancy {
    match rng.random_range(0..3) {
        0 => Occupancy::Vacuum,
        1 => Occupancy::H,
        _ => Occupancy::V,
    }
}

pub fn random_config(rng: &mut StdRng, width: usize) -> Configuration {
    Configuration::new((0..width).map(|_| random_occupancy(rng)).collect())
}

fn distinct_pair(rng: &mut StdRng, modes: u32) -> (u32, u32) {
    let a = rng.random_range(1..=modes);
    let mut b = rng.random_range(1..=modes - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// A random circuit that passes validation: in-place PBSs and merging PCs so
/// the static freshness rule holds.
pub fn random_valid_circuit(rng: &mut StdRng) -> Circuit {
    let modes = rng.random_range(1..=8u32);
    let mut c = Circuit::new(modes as usize);
    for _ in 0..rng.random_range(0..16) {
        if modes == 1 {
            c.had(1);
            continue;
        }
        let (a, b) = distinct_pair(rng, modes);
        match rng.random_range(0..5) {
            0 => c.had(a),
            1 => c.cnot(a, b),
            2 => c.vgate(a, b),
            3 => c.pbs(a, b, a, b),
            _ => {
                let out = if rng.random_bool(0.5) { a } else { b };
                c.pc(a, b, out)
            }
        };
    }
    assert!(
        c.validate().is_empty(),
        "generator produced {:?}",
        c.validate()
    );
    c
}

/// Dense simulator over the 2^n fully occupied basis, written directly from
/// the gate definitions. Bit `n - mode` of the index is 1 when that mode is V,
/// so index order matches canonical configuration order.
pub struct DenseReference {
    pub modes: usize,
}

impl DenseReference {
    fn bit(&self, mode: u32) -> usize {
        1 << (self.modes - mode as usize)
    }

    pub fn apply(&self, gate: &Gate, v: &[Amplitude]) -> Vec<Amplitude> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut out = vec![Amplitude::default(); v.len()];
        for (i, &a) in v.iter().enumerate() {
            if a == Amplitude::default() {
                continue;
            }
            match *gate {
                Gate::Hadamard { mode } => {
                    let b = self.bit(mode.label());
                    let sign = if i & b != 0 { -s } else { s };
                    out[i & !b] += a * s;
                    out[i | b] += a * sign;
                }
                Gate::Cnot { control, target } => {
                    let j = if i & self.bit(control.label()) != 0 {
                        i ^ self.bit(target.label())
                    } else {
                        i
                    };
                    out[j] += a;
                }
                Gate::VGate {
                    control, target, ..
                } => {
                    let (c, t) = (self.bit(control.label()), self.bit(target.label()));
                    let j = if i & c != 0 && i & t != 0 { i & !t } else { i };
                    out[j] += a;
                }
                Gate::Pbs { .. } | Gate::Pc { .. } => {
                    panic!("reference simulator covers fully occupied gates only")
                }
            }
        }
        out
    }

    pub fn run(&self, circuit: &Circuit, input: usize) -> Vec<Amplitude> {
        let mut v = vec![Amplitude::default(); 1 << self.modes];
        v[input] = Amplitude::new(1.0, 0.0);
        for g in circuit.gates() {
            v = self.apply(g, &v);
        }
        v
    }

    pub fn label(&self, index: usize) -> String {
        (1..=self.modes as u32)
            .map(|m| if index & self.bit(m) != 0 { 'V' } else { 'H' })
            .collect()
    }
}
