mod algebra;
mod dynamics;
mod error;
mod maxwell;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliResult;
use crate::report::{Report, TOOL, VERSION};

#[derive(Parser)]
#[command(name = "mparity", version, about = "Parity-aware electrodynamics: algebra checks, field laws and particle runs")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Randomized and exhaustive checks of the exterior algebra.
    VerifyAlgebra {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per degree combination.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<algebra::Fault>,
    },
    /// Field equations and covariance for every field of a scenario.
    VerifyMaxwell { scenario: PathBuf },
    /// Integrates every particle of a scenario and writes trajectory CSVs.
    Simulate {
        scenario: PathBuf,
        /// Output directory for CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Builds antiparticle trajectories by reparameterization or time reflection.
    Conjugate {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        mode: dynamics::Mode,
        /// Scenario transform name or one of E, T, S, TS. Dirac mode defaults to T.
        #[arg(long)]
        transform: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn scenario_report<T: serde::Serialize>(command: &'static str, loaded: &scenario::Loaded, passed: bool, body: T) -> Report<T> {
    Report {
        tool: TOOL,
        version: VERSION,
        command,
        scenario: Some(loaded.spec.name.clone()),
        scenario_hash: loaded.hash.clone(),
        passed,
        body,
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let file = cli.report.as_deref();
    match cli.command {
        Command::VerifyAlgebra { seed, cases, inject_fault } => {
            let body = algebra::run(seed, cases, inject_fault);
            let passed = body.checks.iter().all(|c| c.passed);
            let params = format!("verify-algebra seed={seed} cases={cases} fault={inject_fault:?}");
            let report = Report {
                tool: TOOL,
                version: VERSION,
                command: "verify-algebra",
                scenario: None,
                scenario_hash: scenario::sha256_hex(params.as_bytes()),
                passed,
                body,
            };
            report.emit(file)?;
            Ok(passed)
        }
        Command::VerifyMaxwell { scenario } => {
            let loaded = scenario::load(&scenario)?;
            let body = maxwell::run(&loaded)?;
            let passed = body.fields.iter().all(|f| f.passed);
            scenario_report("verify-maxwell", &loaded, passed, body).emit(file)?;
            Ok(passed)
        }
        Command::Simulate { scenario, out } => {
            let loaded = scenario::load(&scenario)?;
            let dir = loaded.out_dir(out.as_deref());
            let (body, passed) = dynamics::simulate(&loaded, &dir)?;
            scenario_report("simulate", &loaded, passed, body).emit(file)?;
            Ok(passed)
        }
        Command::Conjugate { scenario, mode, transform, out } => {
            let loaded = scenario::load(&scenario)?;
            let name = match (mode, transform) {
                (_, Some(n)) => Some(n),
                (dynamics::Mode::Dirac, None) => Some("T".to_string()),
                (dynamics::Mode::Feynman, None) => None,
            };
            let transform = name.map(|n| scenario::find_transform(&loaded, &n)).transpose()?;
            let dir = loaded.out_dir(out.as_deref());
            let (body, passed) = dynamics::conjugate(&loaded, mode, transform.as_ref(), &dir)?;
            scenario_report("conjugate", &loaded, passed, body).emit(file)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
