//! Target states, fidelity, a dense operator oracle and success-probability
//! bookkeeping for competing W-state constructions.

mod oracle;
mod schemes;

pub use oracle::{
    basis_configurations, build_dense_operator, oracle_check, DenseOperator, OracleError,
    OracleReport, MAX_ORACLE_MODES, ORACLE_TOLERANCE,
};
pub use schemes::{
    builtin_scheme_table, end_to_end_probability, order_of_magnitude, render_json, render_table,
    CnotModel, GateComponent, Probability, SchemeError, SchemeModel, SuccessReport,
};

use crate::error::{Result, SimError};
use crate::fock::{Amplitude, Configuration, Occupancy, StateVector};

/// States whose norm differs from 1 by more than this are rejected by [`fidelity`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Equal superposition of the `n` configurations holding exactly one V photon.
pub fn w_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(SimError::InvalidWStateSize { n });
    }
    let amp = Amplitude::new(1.0 / (n as f64).sqrt(), 0.0);
    let terms = (0..n).map(|excited| {
        let occ = (0..n)
            .map(|i| {
                if i == excited {
                    Occupancy::V
                } else {
                    Occupancy::H
                }
            })
            .collect();
        (Configuration::new(occ), amp)
    });
    StateVector::from_terms(n, terms)
}

/// Squared overlap `|⟨target|state⟩|²` of two normalized pure states.
pub fn fidelity(state: &StateVector, target: &StateVector) -> Result<f64> {
    for s in [state, target] {
        let norm = s.norm();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(SimError::NotNormalized { norm });
        }
    }
    Ok(target.inner_product(state)?.norm_sqr())
}
