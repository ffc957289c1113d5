//! Dense-matrix oracle over the fully occupied polarization basis.
//!
//! Each gate is turned into a matrix one basis column at a time and the
//! circuit operator is the ordered product of those matrices. The sparse
//! runner instead pushes a whole superposition through the gate list, so the
//! two routes only share the per-configuration gate rules.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, RunError};
use crate::error::SimError;
use crate::fock::{Configuration, Polarization, StateVector};

/// Largest primary-mode count the oracle will expand (2^10 basis states).
pub const MAX_ORACLE_MODES: usize = 10;

/// Per-amplitude agreement required between the sparse and dense routes.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle supports 1..={MAX_ORACLE_MODES} primary modes, circuit has {0}")]
    UnsupportedModeCount(usize),
    #[error("gate {index} ({desc}) on basis input {config}: {source}")]
    Gate {
        index: usize,
        desc: String,
        config: String,
        source: SimError,
    },
    #[error("gate {index} ({desc}) left the fully occupied subspace: {config}")]
    OutsideBasis {
        index: usize,
        desc: String,
        config: String,
    },
    #[error(transparent)]
    Run(#[from] RunError),
}

/// All `2^n` configurations with one photon in every mode, in canonical order.
pub fn basis_configurations(modes: usize) -> Vec<Configuration> {
    (0..1usize << modes)
        .map(|bits| {
            let pols: Vec<_> = (0..modes)
                .map(|i| {
                    if bits >> (modes - 1 - i) & 1 == 1 {
                        Polarization::V
                    } else {
                        Polarization::H
                    }
                })
                .collect();
            Configuration::from_polarizations(&pols)
        })
        .collect()
}

fn basis_index(config: &Configuration) -> Option<usize> {
    config.occupancies().iter().try_fold(0usize, |acc, occ| {
        occ.polarization()
            .map(|p| acc << 1 | usize::from(p == Polarization::V))
    })
}

/// Circuit operator restricted to the fully occupied basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub basis: Vec<Configuration>,
    /// Column `j` is the image of `basis[j]`.
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn column_state(&self, j: usize) -> StateVector {
        let width = self.basis[j].width();
        let terms = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), self.matrix[(i, j)]));
        StateVector::from_terms(width, terms).expect("finite matrix entries")
    }

    /// Largest entry of `|M†M − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.matrix.adjoint() * &self.matrix;
        let identity = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (gram - identity)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// True when two distinct basis inputs have non-orthogonal images.
    pub fn columns_overlap(&self, a: usize, b: usize) -> bool {
        let overlap: Complex64 = self
            .matrix
            .column(a)
            .iter()
            .zip(self.matrix.column(b).iter())
            .map(|(x, y)| x.conj() * y)
            .sum();
        overlap.norm() > ORACLE_TOLERANCE
    }
}

type GateColumn = Result<Vec<(usize, Complex64)>, SimError>;

fn gate_columns(
    circuit: &Circuit,
    index: usize,
    basis: &[Configuration],
) -> Result<Vec<GateColumn>, OracleError> {
    let gate = circuit.gates()[index];
    basis
        .iter()
        .map(|config| {
            let image = match gate.apply(&StateVector::basis(config.clone())) {
                Ok(image) => image,
                Err(e) => return Ok(Err(e)),
            };
            image
                .terms()
                .map(|(c, a)| {
                    basis_index(c)
                        .map(|i| (i, *a))
                        .ok_or_else(|| OracleError::OutsideBasis {
                            index,
                            desc: gate.to_string(),
                            config: c.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Ok)
        })
        .collect()
}

/// Multiplies per-gate matrices in circuit order. A gate whose rule fails on
/// some basis configuration only raises an error if that configuration
/// actually carries weight at that point of the circuit.
pub fn build_dense_operator(circuit: &Circuit) -> Result<DenseOperator, OracleError> {
    let modes = circuit.modes();
    if modes == 0 || modes > MAX_ORACLE_MODES {
        return Err(OracleError::UnsupportedModeCount(modes));
    }
    let basis = basis_configurations(modes);
    let dim = basis.len();
    let mut matrix = DMatrix::<Complex64>::identity(dim, dim);

    for index in 0..circuit.gates().len() {
        let columns = gate_columns(circuit, index, &basis)?;
        let mut next = DMatrix::<Complex64>::zeros(dim, dim);
        for j in 0..dim {
            for (k, column) in columns.iter().enumerate() {
                let weight = matrix[(k, j)];
                if weight == Complex64::default() {
                    continue;
                }
                match column {
                    Ok(entries) => {
                        for &(row, g) in entries {
                            next[(row, j)] += g * weight;
                        }
                    }
                    Err(source) => {
                        return Err(OracleError::Gate {
                            index,
                            desc: circuit.gates()[index].to_string(),
                            config: basis[k].to_string(),
                            source: source.clone(),
                        })
                    }
                }
            }
        }
        matrix = next;
    }
    Ok(DenseOperator { basis, matrix })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub inputs: usize,
    pub max_deviation: f64,
    /// Basis input with the largest deviation.
    pub worst_input: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.max_deviation < ORACLE_TOLERANCE
    }
}

/// Runs every fully occupied basis input through the sparse runner and
/// compares with the matching column of the dense operator.
pub fn oracle_check(circuit: &Circuit) -> Result<OracleReport, OracleError> {
    let dense = build_dense_operator(circuit)?;
    let mut max_deviation: f64 = 0.0;
    let mut worst_input = None;
    for (j, config) in dense.basis.iter().enumerate() {
        let sparse = circuit.run(config)?.final_state;
        let d = sparse
            .max_abs_diff(&dense.column_state(j))
            .map_err(|e| OracleError::Run(RunError::Input(e)))?;
        if d > max_deviation || worst_input.is_none() {
            max_deviation = max_deviation.max(d);
            worst_input = Some(config.to_string());
        }
    }
    Ok(OracleReport {
        inputs: dense.dim(),
        max_deviation,
        worst_input,
    })
}
