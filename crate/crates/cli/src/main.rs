//! `hecke`: batch verification suites over the affine Hecke algebra.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! invalid input.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::{Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact checks for the affine Hecke algebra of type A")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rank e of the affine Weyl group (e >= 2).
    #[arg(long, global = true, default_value_t = 3)]
    e: usize,

    /// Residue degree f.
    #[arg(long, global = true, default_value_t = 1)]
    f: u32,

    /// Residue field size q0 of the base field (a prime power).
    #[arg(long, global = true, default_value_t = 2)]
    q0: u64,

    /// Length truncation.
    #[arg(long = "L", global = true, default_value_t = 10)]
    l: usize,

    /// Value of the character on [Pi], as "p/q" or an integer.
    #[arg(long, global = true, default_value = "1")]
    chi_pi: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 20240611)]
    seed: u64,

    /// Number of random samples for sampled checks.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    /// Catalog file (one entry or an array) checked by `gelfand` instead of
    /// the shipped pairs.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check the Iwahori-Matsumoto presentation with generic q1.
    Presentation,
    /// Check the eigen-equation of the truncated spherical function.
    Eigen,
    /// Matrix coefficient values and the operator cross-check.
    Coefficient,
    /// Growth series of W0 by enumeration and closed form.
    Growth,
    /// Poincare series closed form, values and positivity.
    Poincare,
    /// Truncated distinction integral against its closed form.
    Distinction,
    /// Pairing of fixed vectors for the shipped finite Gelfand pairs.
    Gelfand,
    /// Every suite above.
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("hecke: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let chi_pi: Rational = cli.chi_pi.parse()?;
    let mut cfg = commands::Config::new(cli.e, cli.f, cli.q0, cli.l, chi_pi, cli.seed, cli.samples)?;
    if let Some(path) = &cli.catalog {
        cfg.catalog = Some(commands::load_catalog(path)?);
    }
    let outcome = match cli.command {
        Command::Presentation => commands::presentation(&cfg)?,
        Command::Eigen => commands::eigen(&cfg)?,
        Command::Coefficient => commands::coefficient(&cfg)?,
        Command::Growth => commands::growth(&cfg)?,
        Command::Poincare => commands::poincare(&cfg)?,
        Command::Distinction => commands::distinction(&cfg)?,
        Command::Gelfand => commands::gelfand(&cfg)?,
        Command::All => commands::all(&cfg)?,
    };
    let text = match cli.output {
        Format::Json => render::json(&outcome),
        Format::Csv => render::csv(&outcome),
        Format::Text => render::text(&outcome),
    }
    .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    // a closed pipe is not a check failure
    let _ = out.write_all(text.as_bytes());
    Ok(outcome.passed)
}
