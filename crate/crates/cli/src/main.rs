//! `superzeta`: build geodesic tables, evaluate the library's functions at
//! points or on grids, and run the identity check suites.

mod checks;
mod context;
mod eval;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use context::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "superzeta",
    version,
    about = "Superzeta functions, Selberg data and Lax-Phillips determinants"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Surface configuration (JSON). Falls back to SUPERZETA_CONFIG, then
    /// ./superzeta.json, then the built-in reference configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Geodesic norm table (CSV). Built in memory when absent.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Cutoff of the in-memory table, or of the loaded table after restriction.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_norm: Option<f64>,
    /// Worker threads; defaults to SUPERZETA_THREADS or all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Geodesic table maintenance.
    Table {
        #[command(subcommand)]
        action: TableCmd,
    },
    /// Evaluate a function at a point or over a grid.
    Eval(eval::EvalArgs),
    /// Run an identity check suite.
    Check {
        #[arg(value_enum)]
        suite: checks::Suite,
        /// Override every tolerance of the suite.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableCmd {
    /// Enumerate primitive classes up to --max-norm and write the table to --out.
    Build {
        #[arg(long, default_value = "gamma2")]
        group: String,
        /// Node budget of the enumeration.
        #[arg(long, default_value_t = 4_000_000_000)]
        max_nodes: u64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    context::init_threads(cli.global.threads)?;
    match &cli.command {
        Command::Table {
            action: TableCmd::Build { group, max_nodes },
        } => context::table_build(&cli.global, group, *max_nodes),
        Command::Eval(args) => eval::run(&cli.global, args),
        Command::Check { suite, tol } => checks::run(&cli.global, *suite, *tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}
