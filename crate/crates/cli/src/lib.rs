//! Front end for the caustics workbench. Every subcommand renders its result
//! into a string first, so output is byte-identical across runs, then writes
//! it to stdout or to `--out` together with a run manifest.

pub mod args;
pub mod commands;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use caustics_core::coeff_engine::CoeffError;
use caustics_core::elliptic_geom::GeomError;
use caustics_core::prime_select::PrimeError;
use caustics_core::rigidity_system::RigidityError;

use args::{Cli, Command, Output};
use commands::Report;
use manifest::RunManifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Rigidity(
                RigidityError::BadQ0(_)
                | RigidityError::BadM { .. }
                | RigidityError::HmaxTooLarge { .. }
                | RigidityError::OutOfRange(_),
            )
            | CliError::Prime(
                PrimeError::BadQ0(_) | PrimeError::NotPrime(_) | PrimeError::BelowThreshold { .. },
            )
            | CliError::Geom(GeomError::BadEccentricity(_) | GeomError::LambdaOutOfRange { .. }) => {
                EXIT_USAGE
            }
            _ => EXIT_FAILED,
        }
    }
}

fn output_of(cmd: &Command) -> &Output {
    use args::{BilliardCommand, CoeffsCommand, PrimesCommand, RigidityCommand};
    match cmd {
        Command::Coeffs(CoeffsCommand::Beta { output, .. } | CoeffsCommand::Xi { output, .. }) => {
            output
        }
        Command::Identities(a) => &a.output,
        Command::Primes(
            PrimesCommand::Table { output, .. } | PrimesCommand::Check { output, .. },
        ) => output,
        Command::Rigidity(RigidityCommand::Certify { output, .. }) => output,
        Command::Billiard(BilliardCommand::Verify { output, .. }) => output,
        Command::Examples(a) => &a.output,
    }
}

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Coeffs(c) => commands::coeffs(c),
        Command::Identities(a) => commands::identities(a),
        Command::Primes(c) => commands::primes(c),
        Command::Rigidity(c) => commands::rigidity(c),
        Command::Billiard(c) => commands::billiard(c),
        Command::Examples(a) => commands::examples(a),
    }
}

/// Parses `argv`, runs the subcommand and returns the exit code: 0 on
/// success, 1 when a verification fails, 2 on a usage error.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let out = output_of(&cli.command);
    let written = match &out.out {
        None => stdout
            .write_all(report.text.as_bytes())
            .map_err(CliError::from),
        Some(path) => std::fs::write(path, report.text.as_bytes())
            .map_err(CliError::from)
            .and_then(|()| {
                let m = RunManifest::new(&argv, &report.text, start.elapsed());
                m.write_next_to(path).map_err(CliError::from)
            }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_FAILED;
    }
    if report.ok() {
        return EXIT_OK;
    }
    for f in &report.failures {
        let _ = writeln!(stderr, "FAIL {f}");
    }
    EXIT_FAILED
}
