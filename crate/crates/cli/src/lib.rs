//! Command-line driver for `gup-coulomb`: spectra, eigenfunctions, maximally
//! localized states, Green-function sums and the verification suite.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical failure. Errors are reported on stderr as one JSON line.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};

use clap::Parser;
use gup_coulomb::report::Status;
use gup_coulomb::VerificationReport;
use serde::Serialize;

use crate::args::{Cli, MlTable, WaveTable};
use crate::config::{CommandConfig, RunConfig};
use crate::error::{CliError, CliResult, ExitStatus};
use crate::output::{fmt_f64, write_table, Row};

/// CSV/JSON row for a verification record.
#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct ReportRow(pub VerificationReport);

impl Row for ReportRow {
    const HEADER: &'static [&'static str] = &[
        "check_name",
        "computed",
        "reference",
        "reference_provenance",
        "abs_err",
        "rel_err",
        "tolerance",
        "status",
    ];
    fn fields(&self) -> Vec<String> {
        let r = &self.0;
        let label = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
        vec![
            r.check_name.clone(),
            fmt_f64(r.computed),
            fmt_f64(r.reference),
            label(serde_json::to_value(r.reference_provenance).unwrap_or_default()),
            fmt_f64(r.abs_err),
            fmt_f64(r.rel_err),
            r.tolerance.map(fmt_f64).unwrap_or_default(),
            label(serde_json::to_value(r.status).unwrap_or_default()),
        ]
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Execute a resolved configuration, writing the table to `out`.
pub fn execute(rc: &RunConfig, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let p = &rc.params;
    let f = rc.format;
    match &rc.command {
        CommandConfig::Spectrum { nmax } => write_table(&commands::spectrum(p, *nmax)?, f, out)?,
        CommandConfig::Wavefunction {
            n,
            grid,
            beta_zero,
            branch,
            table,
        } => match (table, beta_zero) {
            (WaveTable::Norms, _) => write_table(&commands::wavefunction_norms(p, *n, &rc.quad)?, f, out)?,
            (WaveTable::Values, true) => {
                write_table(&commands::wavefunction_with_reference(p, *n, grid, *branch)?, f, out)?
            }
            (WaveTable::Values, false) => write_table(&commands::wavefunction(p, *n, grid, *branch)?, f, out)?,
        },
        CommandConfig::Mlstate { table, pairs, xi, grid } => match table {
            MlTable::Overlaps => write_table(&commands::ml_overlaps(p, pairs, &rc.quad)?, f, out)?,
            MlTable::Values => write_table(&commands::ml_values(p, xi, grid)?, f, out)?,
            MlTable::Norms => write_table(&commands::ml_norms(p, xi, &rc.quad)?, f, out)?,
        },
        CommandConfig::Green {
            p_b,
            p_a,
            energies,
            n_max,
            eta,
        } => write_table(&commands::green(p, *p_b, *p_a, energies, *n_max, *eta)?, f, out)?,
        CommandConfig::Verify { filter, betas } => {
            let reports = verify::run_suite(p, betas, &rc.quad, filter.as_deref())?;
            let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
            let rows: Vec<ReportRow> = reports.into_iter().map(ReportRow).collect();
            write_table(&rows, f, out)?;
            if failed > 0 {
                log::warn!("{failed} verification check(s) failed");
                return Ok(ExitStatus::VerificationFailed);
            }
        }
    }
    Ok(ExitStatus::Success)
}

fn run_inner(args: &[String], stdout: &mut dyn Write) -> CliResult<ExitStatus> {
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Config(String::new())
        }
        _ => CliError::config(e.to_string().lines().next().unwrap_or("invalid arguments").trim()),
    });
    let cli = match cli {
        Ok(c) => c,
        Err(CliError::Config(m)) if m.is_empty() => {
            // help and version go to stdout with status 0
            let _ = Cli::try_parse_from(args).map_err(|e| write!(stdout, "{e}"));
            return Ok(ExitStatus::Success);
        }
        Err(e) => return Err(e),
    };
    let rc = RunConfig::resolve(&cli)?;
    init_logging(rc.verbose);
    match &rc.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            let status = execute(&rc, &mut w)?;
            w.flush().map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
            Ok(status)
        }
        None => execute(&rc, stdout),
    }
}

/// Parse `args` (program name first), run, and return the exit status.
/// Errors are written to `stderr` as one JSON line.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus {
    match run_inner(args, stdout) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json_line());
            e.status()
        }
    }
}
