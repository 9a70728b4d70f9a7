#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod error;
mod manifest;
mod moments;
mod solve;
mod tabulate;
mod validate;

use error::{CliError, CliResult};
use tabulate::{DensityMethod, Figure, KernelMethod};

/// Densities, two-scale kernels, moments and conservation-law runs for
/// multiscale stable operators.
#[derive(Debug, Parser)]
#[command(name = "mslevy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a single stable density as CSV.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DensityMethod::Series)]
        method: DensityMethod,
    },
    /// Tabulate the kernel of a pair of stable components, or a figure preset.
    Kernel {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "figure")]
        alpha1: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta1: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma1: f64,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "figure")]
        alpha2: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta2: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma2: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "figure")]
        x0: Option<f64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "figure")]
        x1: Option<f64>,
        #[arg(long, required_unless_present = "figure")]
        n: Option<usize>,
        /// Defaults to catalog for figure presets and series otherwise.
        #[arg(long, value_enum)]
        method: Option<KernelMethod>,
        #[arg(long, value_enum, conflicts_with_all = ["alpha1", "alpha2", "x0", "x1", "n"])]
        figure: Option<Figure>,
    },
    /// Stieltjes moments of a one-sided pair with the Carleman diagnostic.
    Moments {
        #[arg(long)]
        alpha1: f64,
        #[arg(long)]
        alpha2: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Inclusive range n0..n1 of printed orders.
        #[arg(long, default_value = "0..10")]
        orders: String,
        /// Number of Carleman terms summed.
        #[arg(long, default_value_t = 1000)]
        terms: u32,
    },
    /// Run the conservation-law solver from a TOML config.
    Solve {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant suites.
    Validate {
        #[arg(long, value_enum, default_value_t = validate::Suite::All)]
        suite: validate::Suite,
    },
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}

fn run(cmd: Command) -> CliResult<u8> {
    match cmd {
        Command::Density {
            alpha,
            beta,
            gamma,
            t,
            x0,
            x1,
            n,
            method,
        } => {
            let a = tabulate::DensityArgs {
                alpha,
                beta,
                gamma,
                t,
                x0,
                x1,
                n,
                method,
            };
            emit(&tabulate::density(&a)?)?;
        }
        Command::Kernel {
            alpha1,
            beta1,
            gamma1,
            alpha2,
            beta2,
            gamma2,
            t,
            x0,
            x1,
            n,
            method,
            figure,
        } => {
            let text = match figure {
                Some(f) => tabulate::figure(f, t, method.unwrap_or(KernelMethod::Catalog))?,
                None => {
                    let missing =
                        || CliError::usage("kernel needs --alpha1, --alpha2, --x0, --x1 and --n");
                    let a = tabulate::KernelArgs {
                        first: (alpha1.ok_or_else(missing)?, beta1, gamma1),
                        second: (alpha2.ok_or_else(missing)?, beta2, gamma2),
                        t,
                        x0: x0.ok_or_else(missing)?,
                        x1: x1.ok_or_else(missing)?,
                        n: n.ok_or_else(missing)?,
                        method: method.unwrap_or(KernelMethod::Series),
                    };
                    tabulate::kernel(&a)?
                }
            };
            emit(&text)?;
        }
        Command::Moments {
            alpha1,
            alpha2,
            t,
            orders,
            terms,
        } => {
            let a = moments::MomentArgs {
                alpha1,
                alpha2,
                t,
                orders,
                terms,
            };
            emit(&moments::moments(&a)?)?;
        }
        Command::Solve { config, out } => {
            let summary = solve::run(&config, &out)?;
            eprintln!("{summary}");
        }
        Command::Validate { suite } => {
            let rows = validate::run(suite);
            emit(&validate::report(suite, &rows))?;
            if rows.iter().any(|r| !r.passed()) {
                return Ok(error::VALIDATION as u8);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code as u8
        }
    };
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
