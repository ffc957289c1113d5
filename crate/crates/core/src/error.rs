use thiserror::Error;

use crate::fock::ModeId;

/// Failures raised while building or evolving a state.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("mode {mode} is outside the state's {width} declared modes")]
    ModeOutOfRange { mode: ModeId, width: usize },

    #[error("state width mismatch: {left} modes vs {right} modes")]
    WidthMismatch { left: usize, right: usize },

    #[error("two photons bunched into mode {mode}")]
    Bunching { mode: ModeId },

    #[error("path coupler collision: modes {in1} and {in2} are both occupied")]
    PcCollision { in1: ModeId, in2: ModeId },

    #[error("auxiliary mode {mode} is occupied")]
    AuxOccupied { mode: ModeId },

    #[error("non-finite amplitude for configuration {config}")]
    NonFiniteAmplitude { config: String },

    #[error("invalid configuration text {text:?}: {reason}")]
    InvalidConfiguration { text: String, reason: String },

    #[error("state is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },

    #[error("W state needs at least 2 qubits, got {n}")]
    InvalidWStateSize { n: usize },

    #[error("invalid prune epsilon {0}")]
    InvalidEpsilon(f64),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
