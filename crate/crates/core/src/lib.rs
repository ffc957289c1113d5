//! Simulator for polarization-encoded photonic circuits over named spatial
//! modes.
//!
//! The building blocks are polarizing beamsplitters, path couplers, Hadamard
//! wave plates, cNOT gates and the composite V gate (two splitting PBSs, a
//! cNOT on auxiliary rails, a merging PBS and a path coupler). The presets in
//! [`circuit`] assemble them into a circuit that turns four unentangled
//! photons `|HVHV⟩` into the four-qubit W state.
//!
//! ```
//! use wsim_core::analysis::{fidelity, w_state};
//! use wsim_core::circuit::build_w4_circuit;
//!
//! let trace = build_w4_circuit().run(&"HVHV".parse().unwrap()).unwrap();
//! let f = fidelity(&trace.final_state, &w_state(4).unwrap()).unwrap();
//! assert!((f - 1.0).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod fock;
pub mod gates;
pub mod qcdl;
pub mod text;

pub use circuit::{Circuit, ExecutionTrace};
pub use error::SimError;
pub use fock::{Amplitude, Configuration, ModeId, Occupancy, Polarization, StateVector};
pub use gates::Gate;
