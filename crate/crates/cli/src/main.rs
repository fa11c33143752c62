//! `geoquant`: batch checks with JSON-lines reports and CSV export.

mod checks;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{resolve, Flags, Settings, SEED_ENV};
use report::CheckReport;

#[derive(Debug, Parser)]
#[command(name = "geoquant", version, about = "Check suites and data export for geoquant")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Complex structure <-> vacuum form round trips
    Roundtrip,
    /// Transform isometry, kernel coordinate form and quadrature pairing
    Bargmann,
    /// Commutators of linear observables in all four representations
    Ccr,
    /// Transform intertwines the Schrödinger and holomorphic observables
    Intertwine,
    /// Base change, affine transform and affine observables
    Affine,
    /// Lattice Klein-Gordon vacuum; CSV columns site,value
    LatticeVacuum,
    /// Coherent-state approximation residuals; CSV columns k,residual
    DensityProbe,
    /// Coherent wave function samples; CSV columns phi_1..phi_n,re,im
    Sample,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn run(command: Command, s: &Settings) -> Result<Vec<CheckReport>, (u8, String)> {
    let lib = |e: geoquant::error::Error| (EXIT_FAIL, e.to_string());
    match command {
        Command::Roundtrip => checks::roundtrip(s).map_err(lib),
        Command::Bargmann => checks::bargmann(s).map_err(lib),
        Command::Ccr => checks::ccr(s).map_err(lib),
        Command::Intertwine => checks::intertwine(s).map_err(lib),
        Command::Affine => checks::affine(s).map_err(lib),
        Command::LatticeVacuum => checks::lattice_vacuum(s).map_err(lib),
        Command::DensityProbe => checks::density(s).map_err(lib),
        Command::Sample => match &s.out {
            Some(path) => checks::sample(s, path).map_err(lib),
            None => Err((EXIT_USAGE, "sample requires --out".into())),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let settings = match resolve(&cli.flags, std::env::var(SEED_ENV).ok()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let reports = match run(cli.command, &settings) {
        Ok(r) => r,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    for r in &reports {
        if let Err(e) = r.write_line(&mut stdout) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    let _ = stdout.flush();
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
