//! `weylbach`: Kähler cones and Calabi energies of Hirzebruch surfaces,
//! curvature energies by quadrature, and residual checks of the
//! Einstein–Maxwell and Bach–Merkulov equations on catalog metrics.
//!
//! Exit codes: 0 when every requested check passes, 2 when one exceeds its
//! tolerance, 1 on any error.

mod commands;
mod output;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weylbach::quadrature::DEFAULT_RESOLUTION;

use crate::output::CommandResult;

#[derive(Parser, Debug)]
#[command(name = "weylbach", version, about = "Hirzebruch-surface energies and field-equation checks")]
struct Cli {
    /// Output format of the payload written to stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Quadrature nodes per axis.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION, global = true)]
    resolution: usize,
    /// Replaces every check's default tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed of the random sample points used by `verify`.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Em,
    Bm,
    Conformal,
    Curvature,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functional {
    Calabi,
    Weyl,
    WeylPlus,
}

#[derive(clap::Args, Debug)]
struct ClassArgs {
    /// Index of the Hirzebruch surface.
    #[arg(long)]
    k: u32,
    /// Coefficient of the negative section, as `num/den`, an integer or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Coefficient of the fiber.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kähler-cone verdict and the compatible complex structures of a class.
    Cone(ClassArgs),
    /// Calabi energies of the extremal metrics in a class across compatible structures.
    Compare(ClassArgs),
    /// Residual and property suites on a catalog entry.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        entry: String,
    },
    /// Curvature energy of a catalog entry (quadrature) or of a class (closed form).
    Energy {
        #[arg(long)]
        entry: Option<String>,
        /// Class as `k,p,q`.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = Functional::Calabi)]
        functional: Functional,
    },
    /// Named catalog entries and their closed-form constants.
    CatalogList,
}

fn run(cli: &Cli) -> weylbach::Result<CommandResult> {
    match &cli.command {
        Command::Cone(c) => commands::cone(c.k, &c.p, &c.q),
        Command::Compare(c) => commands::compare(c.k, &c.p, &c.q),
        Command::Verify { suite, entry } => verify::verify(
            *suite,
            entry,
            &verify::VerifyOptions { resolution: cli.resolution, tolerance: cli.tolerance, seed: cli.seed },
        ),
        Command::Energy { entry, class, functional } => {
            commands::energy(entry.as_deref(), class.as_deref(), *functional, cli.resolution)
        }
        Command::CatalogList => commands::catalog_list(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(result) => {
            let body = match cli.format {
                Format::Json => result.json_body(),
                Format::Csv => result.csv.render(),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            for line in &result.log {
                eprintln!("{line}");
            }
            ExitCode::from(result.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
