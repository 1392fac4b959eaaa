//! `nfw`: Newton polyhedra, filtration series and hypothesis checks from
//! problem files.

mod commands;
mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use commands::{CommandError, Options};
use nfw_core::hypotheses::Limits;
use report::Report;

/// Exit code for unreadable or malformed input.
const EXIT_INPUT: u8 = 2;
/// Exit code for failures inside a computation.
const EXIT_COMPUTE: u8 = 4;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Facets, ν-matrix and predicates of the Newton polyhedron.
    Polyhedron,
    /// Truncated Poincaré series.
    Series,
    /// Hypothesis checks; exit 0 all PASS, 1 any FAIL, 3 otherwise.
    Check,
    /// Formula-versus-oracle identities; exit 0 iff all applicable ones hold.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Polyhedron => "polyhedron",
            Command::Series => "series",
            Command::Check => "check",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nfw",
    version,
    about = "Newton filtrations and their Poincaré series"
)]
struct Cli {
    command: Command,
    file: PathBuf,
    /// Exponent window `LO..HI`, applied to every index.
    #[arg(long, value_parser = problem::parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Use the least admissible M for the one-index filtration.
    #[arg(long = "minimal-M")]
    minimal_m: bool,
    /// Write the fan as JSON, or the n_{I,J,μ} table when PATH ends in `.csv`.
    #[arg(long, value_name = "PATH")]
    fan_dump: Option<PathBuf>,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Comma-separated series names.
    #[arg(long, value_delimiter = ',')]
    series: Option<Vec<String>>,
    /// Print the JSON report instead of a summary.
    #[arg(long)]
    json: bool,
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("nfw: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            return fail(
                EXIT_INPUT,
                &format!("cannot read {}: {e}", cli.file.display()),
            )
        }
    };
    let problem = match problem::parse(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INPUT, &format!("{}: {e}", cli.file.display())),
    };
    let opts = Options {
        window: cli.window.or(problem.window).unwrap_or((0, 12)),
        minimal_m: cli.minimal_m || problem.minimal_m,
        fan_dump: cli.fan_dump.or_else(|| problem.fan_dump.clone()),
        checks: cli.checks.or_else(|| problem.checks.clone()),
        series: cli.series.or_else(|| problem.series.clone()),
        limits: {
            let d = Limits::default();
            Limits {
                max_pairs: problem.max_pairs.unwrap_or(d.max_pairs),
                max_degree: problem.max_degree.unwrap_or(d.max_degree),
            }
        },
    };
    let run = match cli.command {
        Command::Polyhedron => commands::polyhedron,
        Command::Series => commands::series,
        Command::Check => commands::check,
        Command::Verify => commands::verify,
    };
    let outcome = match run(&problem, &opts) {
        Ok(o) => o,
        Err(CommandError::Input(m)) => return fail(EXIT_INPUT, &m),
        Err(CommandError::Compute(m)) => return fail(EXIT_COMPUTE, &m),
    };
    let exit = outcome.exit;
    let report = Report::new(cli.command.name(), &text, outcome, start.elapsed());
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary());
    }
    ExitCode::from(exit as u8)
}
