use std::collections::BTreeMap;

use wsim_core::{Configuration, Polarization};

/// Per-mode input polarizations, e.g. `HVHV` or `1:H,2:V,3:H,4:V`.
/// Every mode carries exactly one photon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpec(Vec<Polarization>);

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if text.is_empty() {
            return Err("empty input spec".into());
        }
        if text.contains(':') {
            Self::parse_pairs(text)
        } else {
            text.chars()
                .map(|c| {
                    Polarization::from_char(c)
                        .ok_or_else(|| format!("input polarization must be H or V, found {c:?}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(InputSpec)
        }
    }

    fn parse_pairs(text: &str) -> Result<Self, String> {
        let mut by_mode = BTreeMap::new();
        for item in text.split(',') {
            let (mode, pol) = item
                .split_once(':')
                .ok_or_else(|| format!("expected mode:polarization, found {item:?}"))?;
            let mode: usize = mode
                .trim()
                .parse()
                .map_err(|_| format!("bad mode number {:?}", mode.trim()))?;
            let pol = match pol.trim() {
                "H" => Polarization::H,
                "V" => Polarization::V,
                other => {
                    return Err(format!(
                        "input polarization must be H or V, found {other:?}"
                    ))
                }
            };
            if by_mode.insert(mode, pol).is_some() {
                return Err(format!("mode {mode} given twice"));
            }
        }
        for (expected, mode) in (1..).zip(by_mode.keys()) {
            if *mode != expected {
                return Err(format!(
                    "input modes must be 1..={}, missing mode {expected}",
                    by_mode.len()
                ));
            }
        }
        Ok(InputSpec(by_mode.into_values().collect()))
    }

    /// Configuration over a circuit with `modes` primary modes.
    pub fn configuration(&self, modes: usize) -> Result<Configuration, String> {
        if self.0.len() != modes {
            return Err(format!(
                "input covers {} modes but the circuit declares {modes}",
                self.0.len()
            ));
        }
        Ok(Configuration::from_polarizations(&self.0))
    }
}
