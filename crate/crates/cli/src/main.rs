//! `lifshitz`: single computations, sweeps, dispersion-relation transforms
//! and the acceptance suites from the command line.

mod commands;
mod config;
mod error;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{FileConfig, Format, Range};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lifshitz", version, about = "Thermal Casimir free energy, pressure and entropy between dielectric plates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// F, P and S at one separation and temperature
    Compute(Flags),
    /// Thermal corrections over a T or a range: tabulated/oscillator model, static permittivities, low-T asymptote
    Sweep(Flags),
    /// ε(iξ) from an optical table by the dispersion relation
    Kk(Flags),
    /// Run acceptance checks and report pass/fail as JSON
    Validate(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON run configuration; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// separation (m)
    #[arg(long)]
    a: Option<f64>,
    /// temperature (K)
    #[arg(long = "T")]
    t: Option<f64>,
    /// separation grid LO:HI:N (m, linear)
    #[arg(long = "a-range")]
    a_range: Option<Range>,
    /// temperature grid LO:HI:N (K, linear)
    #[arg(long = "T-range")]
    t_range: Option<Range>,
    /// relative tolerance in [1e-12, 1e-3]
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// acceptance suite: dilute, engine, lowtemp, nernst, optics, figures, all
    #[arg(long)]
    suite: Option<String>,
    /// optical table CSV for `kk`
    #[arg(long)]
    table: Option<PathBuf>,
    /// ξ grid LO:HI:N for `kk` (rad/s, logarithmic)
    #[arg(long = "xi-range")]
    xi_range: Option<Range>,
}

impl Flags {
    fn merged(self) -> Result<FileConfig, CliError> {
        let file = match &self.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let flags = FileConfig {
            plates: None,
            a: self.a,
            t: self.t,
            a_range: self.a_range,
            t_range: self.t_range,
            tol: self.tol,
            format: self.format,
            out: self.out,
            table: self.table,
            xi_range: self.xi_range,
            suite: self.suite,
        };
        Ok(file.overlay(flags))
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("LIFSHITZ_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Config(format!("LIFSHITZ_THREADS: expected a positive integer, got {v:?}"))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("LIFSHITZ_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Compute(f) => commands::compute(f.merged()?),
        Command::Sweep(f) => commands::sweep(f.merged()?),
        Command::Kk(f) => commands::kk(f.merged()?),
        Command::Validate(f) => commands::validate(f.merged()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lifshitz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
