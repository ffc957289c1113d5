//! Success-probability bookkeeping for four-qubit W-state constructions.
//!
//! A scheme has a structural probability (its success rate with perfect
//! gates) and a list of gate components, each realized with some probability.
//! The end-to-end figure is the product of the structural probability and
//! every component probability raised to its count. Arithmetic is exact over
//! rationals; floats appear only in reports.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::build_w4_circuit;
use crate::text::format_significant;

pub type Probability = Ratio<u128>;

fn p(numer: u128, denom: u128) -> Probability {
    Ratio::new(numer, denom)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateComponent {
    pub label: String,
    pub probability: Probability,
    pub count: u32,
    /// Set when the probability is only known to order of magnitude.
    pub approximate: bool,
}

impl GateComponent {
    pub fn exact(label: &str, probability: Probability, count: u32) -> Self {
        GateComponent {
            label: label.to_string(),
            probability,
            count,
            approximate: false,
        }
    }

    pub fn order_of_magnitude(label: &str, probability: Probability, count: u32) -> Self {
        GateComponent {
            approximate: true,
            ..GateComponent::exact(label, probability, count)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeModel {
    pub name: String,
    pub structural: Probability,
    pub components: Vec<GateComponent>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("scheme {scheme}: probability {value} of {what} is outside (0, 1]")]
    ProbabilityOutOfRange {
        scheme: String,
        what: String,
        value: String,
    },
    #[error("scheme {scheme}: component {label} has count 0")]
    ZeroCount { scheme: String, label: String },
    #[error("unknown cNOT model {0:?}; expected 1/9, 1/4 or 1")]
    UnknownCnotModel(String),
}

fn in_unit_interval(x: &Probability) -> bool {
    *x > p(0, 1) && *x <= p(1, 1)
}

impl SchemeModel {
    pub fn validate(&self) -> Result<(), SchemeError> {
        let out_of_range = |what: &str, value: &Probability| SchemeError::ProbabilityOutOfRange {
            scheme: self.name.clone(),
            what: what.to_string(),
            value: value.to_string(),
        };
        if !in_unit_interval(&self.structural) {
            return Err(out_of_range("structural success", &self.structural));
        }
        for c in &self.components {
            if !in_unit_interval(&c.probability) {
                return Err(out_of_range(&c.label, &c.probability));
            }
            if c.count == 0 {
                return Err(SchemeError::ZeroCount {
                    scheme: self.name.clone(),
                    label: c.label.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn component(&self, label: &str) -> Option<&GateComponent> {
        self.components.iter().find(|c| c.label == label)
    }
}

/// Realization model for the cNOT gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnotModel {
    /// Linear optics without entangled resources: 1/9.
    LinearOptics,
    /// Linear optics with maximally entangled ancilla photons: 1/4.
    EntangledResource,
    /// Perfect gate.
    Ideal,
}

impl CnotModel {
    pub fn probability(self) -> Probability {
        match self {
            CnotModel::LinearOptics => p(1, 9),
            CnotModel::EntangledResource => p(1, 4),
            CnotModel::Ideal => p(1, 1),
        }
    }
}

impl FromStr for CnotModel {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1/9" => Ok(CnotModel::LinearOptics),
            "1/4" => Ok(CnotModel::EntangledResource),
            "1" => Ok(CnotModel::Ideal),
            other => Err(SchemeError::UnknownCnotModel(other.to_string())),
        }
    }
}

impl fmt::Display for CnotModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.probability())
    }
}

pub const TOFFOLI_PROBABILITY: (u128, u128) = (1, 32);
pub const FREDKIN_PROBABILITY: (u128, u128) = (1, 1000);

/// The seven W-state constructions being compared, with cNOTs realized
/// according to `cnot`.
pub fn builtin_scheme_table(cnot: CnotModel) -> Vec<SchemeModel> {
    let cnot_p = cnot.probability();
    let toffoli = || {
        GateComponent::exact(
            "Toffoli",
            p(TOFFOLI_PROBABILITY.0, TOFFOLI_PROBABILITY.1),
            1,
        )
    };
    let fredkin = || {
        GateComponent::order_of_magnitude(
            "Fredkin",
            p(FREDKIN_PROBABILITY.0, FREDKIN_PROBABILITY.1),
            1,
        )
    };
    let cnots = |count: u32| GateComponent::exact("cNOT", cnot_p, count);
    let fredkin_note = "Fredkin probability is an order-of-magnitude figure (~1e-3)".to_string();

    vec![
        SchemeModel {
            name: "basic fusion".into(),
            structural: p(4, 9),
            components: vec![],
            notes: vec!["fuses smaller W states with linear-optical fusion gates".into()],
        },
        SchemeModel {
            name: "Fredkin-enhanced fusion".into(),
            structural: p(2, 3),
            components: vec![fredkin()],
            notes: vec![
                fredkin_note.clone(),
                "gates other than the Fredkin are not modeled".into(),
            ],
        },
        SchemeModel {
            name: "four-Bell fusion".into(),
            structural: p(1, 4),
            components: vec![cnots(3), toffoli()],
            notes: vec!["fuses four W-type Bell states; entangled resources required".into()],
        },
        SchemeModel {
            name: "three-W fusion".into(),
            structural: p(1, 3),
            components: vec![fredkin()],
            notes: vec![
                fredkin_note,
                "two Bell states and a three-qubit W state as resources".into(),
            ],
        },
        SchemeModel {
            name: "deterministic, 5 cNOT + Toffoli".into(),
            structural: p(1, 1),
            components: vec![cnots(5), toffoli()],
            notes: vec!["four unentangled photons; needs a three-qubit gate".into()],
        },
        SchemeModel {
            name: "deterministic, 8 cNOT".into(),
            structural: p(1, 1),
            components: vec![cnots(8)],
            notes: vec!["arbitrary-size construction specialized to four qubits".into()],
        },
        SchemeModel {
            name: "deterministic, V gates (this circuit)".into(),
            structural: p(1, 1),
            components: vec![cnots(build_w4_circuit().cnot_count() as u32)],
            notes: vec!["2 explicit cNOTs + 1 inside each of 4 V gates".into()],
        },
    ]
}

/// Largest `k` with `10^k <= x`, for `0 < x`.
pub fn order_of_magnitude(x: &Probability) -> i32 {
    let ten = p(10, 1);
    let one = p(1, 1);
    let mut k = 0;
    let mut scaled = *x;
    while scaled < one {
        scaled *= ten;
        k -= 1;
    }
    while scaled >= ten {
        scaled /= ten;
        k += 1;
    }
    k
}

fn to_f64(x: &Probability) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccessReport {
    pub scheme: String,
    pub structural: f64,
    pub end_to_end: f64,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub structural_exact: Probability,
    #[serde(skip)]
    pub end_to_end_exact: Probability,
    #[serde(skip)]
    pub order_of_magnitude: i32,
    #[serde(skip)]
    pub approximate: bool,
}

pub fn end_to_end_probability(model: &SchemeModel) -> SuccessReport {
    let mut total = model.structural;
    for c in &model.components {
        total *= c.probability.pow(c.count as i32);
    }
    let approximate = model.components.iter().any(|c| c.approximate);
    let order = order_of_magnitude(&total);
    let mut notes = Vec::new();
    if model.components.is_empty() {
        notes.push("no gate realization probabilities included".to_string());
    } else {
        let parts: Vec<String> = model
            .components
            .iter()
            .map(|c| format!("{} p={} x{}", c.label, c.probability, c.count))
            .collect();
        notes.push(parts.join(", "));
    }
    if total < p(1, 1) {
        let prefix = if approximate { "~" } else { "" };
        notes.push(format!("{prefix}order of 10^{order}"));
    }
    notes.extend(model.notes.iter().cloned());
    SuccessReport {
        scheme: model.name.clone(),
        structural: to_f64(&model.structural),
        end_to_end: to_f64(&total),
        notes,
        structural_exact: model.structural,
        end_to_end_exact: total,
        order_of_magnitude: order,
        approximate,
    }
}

pub fn render_table(reports: &[SuccessReport]) -> String {
    let name_w = reports
        .iter()
        .map(|r| r.scheme.len())
        .max()
        .unwrap_or(6)
        .max(6);
    let mut out = format!(
        "{:<name_w$}  {:>10}  {:>18}  notes\n",
        "scheme", "structural", "end-to-end"
    );
    for r in reports {
        let structural = format!("{}", r.structural_exact);
        out.push_str(&format!(
            "{:<name_w$}  {:>10}  {:>18}  {}\n",
            r.scheme,
            structural,
            format_significant(r.end_to_end, 12),
            r.notes.join("; ")
        ));
    }
    out
}

pub fn render_json(reports: &[SuccessReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}
