use std::io::Write;
use std::path::Path;

use wsim_core::analysis::{
    builtin_scheme_table, end_to_end_probability, fidelity, oracle_check as check_oracle,
    render_json, render_table, w_state, CnotModel, OracleError,
};
use wsim_core::circuit::{Circuit, ExecutionTrace, RunError};
use wsim_core::fock::{StateVector, DEFAULT_PRUNE_EPSILON};
use wsim_core::qcdl;
use wsim_core::text::{format_significant, render_state};

use crate::input::InputSpec;

/// A failed command, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Physics(String),
    Usage(String),
    /// A check ran to completion and did not pass.
    CheckFailed,
}

impl Failure {
    pub const PARSE: u8 = 1;
    pub const PHYSICS: u8 = 2;
    pub const USAGE: u8 = 3;
    pub const CHECK_FAILED: u8 = 4;

    pub fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => Self::PARSE,
            Failure::Physics(_) => Self::PHYSICS,
            Failure::Usage(_) => Self::USAGE,
            Failure::CheckFailed => Self::CHECK_FAILED,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Physics(m) | Failure::Usage(m) => m,
            Failure::CheckFailed => "",
        }
    }
}

type Outcome = Result<(), Failure>;

pub struct Settings {
    pub epsilon: f64,
}

impl Settings {
    pub fn from_env() -> Result<Self, Failure> {
        let epsilon = match std::env::var("WSIM_EPSILON") {
            Ok(text) => text
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|e| e.is_finite() && *e >= 0.0)
                .ok_or_else(|| {
                    Failure::Usage(format!(
                        "WSIM_EPSILON must be a non-negative decimal, got {text:?}"
                    ))
                })?,
            Err(_) => DEFAULT_PRUNE_EPSILON,
        };
        Ok(Settings { epsilon })
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let circuit = qcdl::parse(&source).map_err(|errors| {
        let lines: Vec<String> = errors
            .iter()
            .map(|e| {
                format!(
                    "{}:{}:{}: {}",
                    path.display(),
                    e.span.line,
                    e.span.column,
                    e.message
                )
            })
            .collect();
        Failure::Parse(lines.join("\n"))
    })?;
    let diagnostics = circuit.validate();
    if !diagnostics.is_empty() {
        let lines: Vec<String> = diagnostics
            .iter()
            .map(|d| format!("{}: {d}", path.display()))
            .collect();
        return Err(Failure::Usage(lines.join("\n")));
    }
    Ok(circuit)
}

fn run_error(e: RunError) -> Failure {
    match e {
        RunError::Gate { .. } => Failure::Physics(e.to_string()),
        RunError::Invalid(diagnostics) => Failure::Usage(
            diagnostics
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        RunError::Input(_) => Failure::Usage(e.to_string()),
    }
}

fn execute(
    settings: &Settings,
    circuit_path: &Path,
    input: &str,
) -> Result<ExecutionTrace, Failure> {
    let circuit = load_circuit(circuit_path)?;
    let config = InputSpec::parse(input)
        .and_then(|spec| spec.configuration(circuit.modes()))
        .map_err(Failure::Usage)?;
    let initial = StateVector::basis(config)
        .with_prune_epsilon(settings.epsilon)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    circuit.run_state(initial).map_err(run_error)
}

fn w_target(name: &str, modes: usize) -> Result<StateVector, Failure> {
    let n: usize = name
        .strip_prefix('w')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| {
            Failure::Usage(format!(
                "unknown fidelity target {name:?}; expected wN, e.g. w4"
            ))
        })?;
    if n != modes {
        return Err(Failure::Usage(format!(
            "fidelity target {name} needs {n} modes, circuit has {modes}"
        )));
    }
    w_state(n).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn run(
    out: &mut dyn Write,
    settings: &Settings,
    circuit_path: &Path,
    input: &str,
    json: bool,
    fidelity_target: Option<&str>,
) -> Outcome {
    let trace = execute(settings, circuit_path, input)?;
    let state = &trace.final_state;
    let fid = match fidelity_target {
        Some(name) => {
            let target = w_target(name, state.width())?;
            let value =
                fidelity(state, &target).map_err(|e| Failure::Physics(format!("fidelity: {e}")))?;
            Some((name, value))
        }
        None => None,
    };
    if json {
        let doc = match fid {
            Some((name, value)) => serde_json::json!({
                "state": state.to_json(),
                "fidelity": { "target": name, "value": value },
            }),
            None => state.to_json(),
        };
        emit(out, &format!("{doc}\n"))
    } else {
        let mut text = render_state(state);
        if let Some((name, value)) = fid {
            text.push_str(&format!(
                "fidelity {name} {}\n",
                format_significant(value, 12)
            ));
        }
        emit(out, &text)
    }
}

pub fn trace(
    out: &mut dyn Write,
    settings: &Settings,
    circuit_path: &Path,
    input: &str,
    json: bool,
) -> Outcome {
    let trace = execute(settings, circuit_path, input)?;
    if json {
        return emit(out, &format!("{}\n", trace.to_json_string()));
    }
    let mut text = format!("input\n{}", render_state(&trace.initial));
    for step in &trace.steps {
        text.push_str(&format!(
            "step {}: {}\n{}",
            step.gate_index,
            step.desc,
            render_state(&step.state)
        ));
    }
    if !trace.steps.is_empty() {
        text.push_str(&format!("final\n{}", render_state(&trace.final_state)));
    }
    emit(out, &text)
}

pub fn compare(out: &mut dyn Write, cnot_p: &str, json: bool) -> Outcome {
    let model: CnotModel = cnot_p
        .parse()
        .map_err(|e| Failure::Usage(format!("--cnot-p: {e}")))?;
    let reports: Vec<_> = builtin_scheme_table(model)
        .iter()
        .map(end_to_end_probability)
        .collect();
    if json {
        emit(out, &format!("{}\n", render_json(&reports)))
    } else {
        emit(
            out,
            &format!(
                "cNOT success probability {model}\n{}",
                render_table(&reports)
            ),
        )
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::UnsupportedModeCount(_) => Failure::Usage(e.to_string()),
        OracleError::Run(run) => run_error(run),
        OracleError::Gate { .. } | OracleError::OutsideBasis { .. } => {
            Failure::Physics(e.to_string())
        }
    }
}

pub fn oracle_check(out: &mut dyn Write, circuit_path: &Path, golden: Option<&Path>) -> Outcome {
    let circuit = load_circuit(circuit_path)?;
    let report = check_oracle(&circuit).map_err(oracle_failure)?;
    let mut passed = report.passed();
    let mut text = format!(
        "oracle: {} basis inputs, max deviation {:e} ({})\n",
        report.inputs,
        report.max_deviation,
        if report.passed() { "PASS" } else { "FAIL" }
    );

    if let Some(path) = golden {
        let source = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let reference = ExecutionTrace::from_json_str(&source)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let ours = circuit
            .run_state(reference.initial.clone())
            .map_err(run_error)?;
        let cmp = ours.compare(&reference, wsim_core::analysis::ORACLE_TOLERANCE);
        passed &= cmp.passed();
        text.push_str(&format!(
            "golden trace {}: max deviation {:e} ({})\n",
            path.display(),
            cmp.max_deviation,
            if cmp.passed() { "PASS" } else { "FAIL" }
        ));
        for m in &cmp.mismatches {
            text.push_str(&format!("  {m}\n"));
        }
    }
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    emit(out, &text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

pub fn validate(out: &mut dyn Write, circuit_path: &Path) -> Outcome {
    let circuit = load_circuit(circuit_path)?;
    emit(
        out,
        &format!(
            "ok: {} modes, {} gates, {} cNOTs\n",
            circuit.modes(),
            circuit.gates().len(),
            circuit.cnot_count()
        ),
    )
}
