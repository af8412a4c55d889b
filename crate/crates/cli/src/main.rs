//! `hyposhift`: classify spectra of hyponormal weighted shifts from a JSON
//! weight spec, and check the classification against finite sections.
//!
//! Exit codes: 0 success, 1 a verified property failed, 2 invalid input,
//! 3 `λ` outside the region an operation requires.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "hyposhift", version, about = "Spectra of hyponormal weighted shift operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Limits, norm, r1 estimates and the hyponormality audit of a spec
    Describe {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Classify one point λ
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Half-width of the circle band (default 1e-9·M)
        #[arg(long, value_parser = parse_tol)]
        tol: Option<f64>,
    },
    /// Truncated eigenvector of the adjoint for λ, as CSV plus a residual line
    Eigvec {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Number of terms (per side for bilateral shifts)
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classification and section oracle over a grid, as CSV
    Scan {
        #[arg(long)]
        spec: PathBuf,
        /// RE_MIN,RE_MAX,IM_MIN,IM_MAX (default [−1.5M, 1.5M]²)
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Option<[f64; 4]>,
        #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
        /// Section size (default 400 unilateral, 200 per side bilateral)
        #[arg(long, value_parser = clap::value_parser!(u32).range(16..))]
        n: Option<u32>,
        #[arg(long, value_parser = parse_tol)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite against a spec
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn property(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

fn parse_numbers<const K: usize>(text: &str) -> Result<[f64; K], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != K {
        return Err(format!("expected {K} comma-separated numbers, got {:?}", text));
    }
    let mut values = [0.0; K];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.parse::<f64>().map_err(|_| format!("{part:?} is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("{part:?} is not finite"));
        }
    }
    Ok(values)
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let [re, im] = parse_numbers::<2>(text)?;
    Ok(Complex64::new(re, im))
}

fn parse_grid(text: &str) -> Result<[f64; 4], String> {
    parse_numbers::<4>(text)
}

fn parse_tol(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(tol) if tol >= 0.0 && tol.is_finite() => Ok(tol),
        _ => Err(format!("tolerance must be a finite number ≥ 0, got {text:?}")),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Describe { spec } => commands::describe(&spec),
        Command::Classify { spec, lambda, tol } => commands::classify(&spec, lambda, tol),
        Command::Eigvec { spec, lambda, n, out } => commands::eigvec(&spec, lambda, n as usize, out.as_deref()),
        Command::Scan {
            spec,
            grid,
            steps,
            n,
            tol,
            seed,
            out,
        } => commands::scan(&spec, grid, steps as usize, n.map(|n| n as usize), tol, seed, out.as_deref()),
        Command::Verify { spec, seed, level } => verify::run(&spec, seed, level),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
