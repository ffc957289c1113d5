//! `wsim`: run, trace and check polarization-encoded photonic circuits.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Failure, Settings};

#[derive(Parser)]
#[command(
    name = "wsim",
    version,
    about = "Photonic circuit simulator for deterministic W-state creation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit and print the final state.
    Run {
        circuit: PathBuf,
        /// Input polarizations, e.g. HVHV or 1:H,2:V,3:H,4:V.
        input: String,
        #[arg(long)]
        json: bool,
        /// Append the fidelity against a W state, e.g. --fidelity=w4.
        #[arg(long)]
        fidelity: Option<String>,
    },
    /// Run a circuit and print the state after every gate.
    Trace {
        circuit: PathBuf,
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare success probabilities of W-state constructions.
    Compare {
        /// cNOT realization probability: 1/9, 1/4 or 1.
        #[arg(long = "cnot-p", default_value = "1/9")]
        cnot_p: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the sparse runner against the dense operator on every basis input.
    OracleCheck {
        circuit: PathBuf,
        /// Also compare a trace against this reference trace JSON.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Parse and validate a circuit file.
    Validate { circuit: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Failure::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let mut stdout = std::io::stdout().lock();
    let result = Settings::from_env().and_then(|settings| match cli.command {
        Command::Run {
            circuit,
            input,
            json,
            fidelity,
        } => commands::run(
            &mut stdout,
            &settings,
            &circuit,
            &input,
            json,
            fidelity.as_deref(),
        ),
        Command::Trace {
            circuit,
            input,
            json,
        } => commands::trace(&mut stdout, &settings, &circuit, &input, json),
        Command::Compare { cnot_p, json } => commands::compare(&mut stdout, &cnot_p, json),
        Command::OracleCheck { circuit, golden } => {
            commands::oracle_check(&mut stdout, &circuit, golden.as_deref())
        }
        Command::Validate { circuit } => commands::validate(&mut stdout, &circuit),
    });
    let _ = stdout.flush();

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message().is_empty() {
                eprintln!("{}", failure.message());
            }
            ExitCode::from(failure.code())
        }
    }
}
