//! `rmtf`: key generation, evaluation, inversion and parameter analysis for
//! the rank-metric trapdoor function.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::ParamArgs;
use crate::error::{CliError, EXIT_USAGE};

const EXIT_CODES: &str = "Exit codes: 0 success, 2 usage, 3 step-I failure, 4 step-II failure, \
                          5 I/O or malformed input, 6 parameter violation.";

#[derive(Parser, Debug)]
#[command(name = "rmtf", version, about = "Rank-metric trapdoor function toolkit", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a key pair and write the public and trapdoor key files.
    Keygen(KeygenArgs),
    /// Evaluate the function on a sampled or given input and write the ciphertext.
    Eval(EvalArgs),
    /// Recover X and E from a ciphertext using the trapdoor.
    Invert(InvertArgs),
    /// Check a parameter set against the structural and failure requirements.
    Validate(ValidateArgs),
    /// Print key and ciphertext sizes.
    Sizes(SizesArgs),
    /// Estimate the decoding failure rate by Monte Carlo.
    #[command(
        long_about = "Estimate the decoding failure rate by Monte Carlo.\n\n\
                      Samples H with n rows, n + L columns and weight-w row supports, and E of \
                      support dimension t with N columns, then decodes H·E.\n\n\
                      CSV columns:\n  \
                      trial        0-based trial index\n  \
                      step_failed  empty on success, I or II for a decoder step, verify when \
                      decoding returned a different E\n  \
                      seed         u64 seed reproducing the trial on its own"
    )]
    Simulate(SimulateArgs),
    /// Exact rank-sphere cardinality with its two-sided estimate.
    Sphere(SphereArgs),
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "rmtf.pk")]
    pub pk: PathBuf,
    #[arg(long, default_value = "rmtf.tk")]
    pub tk: PathBuf,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, default_value = "rmtf.pk")]
    pub pk: PathBuf,
    #[arg(long, default_value = "rmtf.ct")]
    pub ct: PathBuf,
    /// Seed for sampling (X, E); required unless both --x and --e are given.
    #[arg(long, conflicts_with_all = ["x", "e"])]
    pub seed: Option<u64>,
    /// Matrix file holding X (N × k).
    #[arg(long, requires = "e")]
    pub x: Option<PathBuf>,
    /// Matrix file holding E (N × (n + L)).
    #[arg(long, requires = "x")]
    pub e: Option<PathBuf>,
    /// Where to write the sampled X.
    #[arg(long, requires = "seed")]
    pub x_out: Option<PathBuf>,
    /// Where to write the sampled E.
    #[arg(long, requires = "seed")]
    pub e_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    #[arg(long, default_value = "rmtf.pk")]
    pub pk: PathBuf,
    #[arg(long, default_value = "rmtf.tk")]
    pub tk: PathBuf,
    #[arg(long, default_value = "rmtf.ct")]
    pub ct: PathBuf,
    #[arg(long)]
    pub x_out: Option<PathBuf>,
    #[arg(long)]
    pub e_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Check all eight published parameter rows instead.
    #[arg(long)]
    pub table: bool,
    /// Also require the public matrix to be 2^-lambda close to uniform.
    #[arg(long)]
    pub statistical: bool,
    /// Emit one key=value record per constraint instead of the report.
    #[arg(long)]
    pub records: bool,
}

#[derive(Args, Debug)]
pub struct SizesArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Print the published rows with computed and printed KB columns.
    #[arg(long)]
    pub table: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report(&e);
            ExitCode::from(e.exit_code())
        }
    }
}

fn report(e: &CliError) {
    if let CliError::Lib(lib) = e {
        if let Some(step) = lib.decode_step() {
            println!("step_failed={step}");
        }
    }
    eprintln!("error: {e}");
}
