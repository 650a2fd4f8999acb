//! `carries-lab`: exact carries-process and shuffle computations from the shell.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use carries_core::rng::DEFAULT_SEED;
use carries_core::{Rational, Sign};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

#[derive(Debug, Parser)]
#[command(name = "carries-lab", version, about = "Exact computations for generalized carries processes and colored riffle shuffles")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render rationals as decimals.
    #[arg(long, global = true)]
    float: bool,
    /// Decimal places used with --float.
    #[arg(long, global = true, default_value_t = 10)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: carries_core::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    carries_core::rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    pub sign: Sign,
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub n: usize,
    /// `NUM` or `NUM/DEN`.
    #[arg(long, value_parser = parse_rational)]
    pub p: Rational,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transition matrix of a process.
    Matrix {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: usize,
        /// `NUM` or `NUM/DEN`; derived from --d when omitted.
        #[arg(long, value_parser = parse_rational, required_unless_present = "d", conflicts_with = "d")]
        p: Option<Rational>,
        /// Digit offset: summands are written over `{d, …, d+b−1}`.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        /// Build the matrix by enumerating digit columns.
        #[arg(long)]
        oracle: bool,
    },
    /// Eigenvalues and left/right eigenvector matrices.
    Eigen {
        #[command(flatten)]
        process: ProcessArgs,
        /// Only report whether R·L = I and P = R·D·L.
        #[arg(long)]
        check: bool,
    },
    /// Carry moments from the closed forms.
    Moments {
        #[command(flatten)]
        process: ProcessArgs,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Start state.
        #[arg(long, default_value_t = 0, conflicts_with = "stationary")]
        i: usize,
        /// Start from the stationary distribution.
        #[arg(long)]
        stationary: bool,
        /// Also recompute from matrix powers and fail on any difference.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the carries process on seeded random digits.
    Simulate {
        #[command(flatten)]
        process: ProcessArgs,
        /// Number of steps.
        #[arg(long = "N", default_value_t = 10)]
        steps: usize,
        /// Number of independent runs.
        #[arg(long, default_value_t = 1)]
        samples: u64,
    },
    /// Trace a sequence of shuffles.
    Shuffle {
        #[command(flatten)]
        process: ProcessArgs,
        #[arg(long = "N", default_value_t = 3)]
        steps: usize,
        /// Draw summand digits and map them to shuffle words with the bijection.
        #[arg(long)]
        summands: bool,
    },
    /// Expansion of a nonnegative integer in base ±b over a shifted digit set.
    Digits {
        #[arg(long)]
        x: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long)]
        b: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        d: i64,
    },
    /// Run a named verification suite.
    Verify {
        /// transition, eigen, duality, symmetry, sf-numbers, descent-stats, moments,
        /// shuffle-onestep, bijection-plus, bijection-minus, shuffle-prob, gessel,
        /// examples-golden
        suite: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Option<Sign>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_rational)]
        p: Option<Rational>,
        #[arg(long = "N")]
        steps: Option<usize>,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Monte-Carlo samples; 0 skips sampling cases.
        #[arg(long)]
        samples: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = output::Context {
        format: cli.format,
        float: cli.float,
        digits: cli.digits,
        seed: cli.seed,
    };
    let (doc, status) = match cli.command {
        Command::Matrix { sign, b, n, p, d, oracle } => {
            (commands::matrix(&ctx, sign, b, n, p, d, oracle)?, Ok(()))
        }
        Command::Eigen { process, check } => commands::eigen(&ctx, &process, check)?,
        Command::Moments { process, r, s, i, stationary, oracle } => {
            (commands::moments(&ctx, &process, r, s, i, stationary, oracle)?, Ok(()))
        }
        Command::Simulate { process, steps, samples } => {
            (commands::simulate(&ctx, &process, steps, samples)?, Ok(()))
        }
        Command::Shuffle { process, steps, summands } => {
            (commands::shuffle(&ctx, &process, steps, summands)?, Ok(()))
        }
        Command::Digits { x, sign, b, d } => (commands::digits(&ctx, x, sign, b, d)?, Ok(())),
        Command::Verify { suite, sign, b, n, p, steps, cutoff, samples } => {
            let grid = carries_core::Grid {
                sign,
                b,
                n,
                p,
                steps,
                cutoff,
                samples,
                seed: cli.seed,
            };
            commands::verify(&ctx, &suite, &grid)?
        }
    };
    output::write(&doc, cli.out.as_deref())?;
    status
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("carries-lab: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
