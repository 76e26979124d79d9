//! `lattice-order`: score how close a 2D point lattice is to square or
//! hexagonal order using 0D/1D Rips persistence.

mod commands;
mod config;
mod io;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lattice_order::{Error, ErrorKind};

use commands::{ExtractArgs, GenArgs, MatchArgs, PersistArgs, PipelineArgs, ScoreArgs};

/// Exit codes: 0 success, 2 usage, 3 input format, 4 computation, 5 internal consistency.
#[derive(Debug, Parser)]
#[command(name = "lattice-order", version, about)]
struct Cli {
    /// JSON file with one object of flag values per subcommand; command-line flags win.
    #[arg(long, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a square or hexagonal lattice in [-1, 1]^2, optionally jittered.
    Gen(GenArgs),
    /// Compute the 0D/1D persistence diagram of a point cloud.
    Persist(PersistArgs),
    /// Order scores and their interpretation for a persistence diagram.
    Score(ScoreArgs),
    /// Extract indentation centers from a grayscale image by seeded region growing.
    Extract(ExtractArgs),
    /// Match extracted centers against the nominal grid.
    Match(MatchArgs),
    /// Run extract, persist, score and match in one go, writing a report bundle.
    Pipeline(PipelineArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Usage => 2,
        ErrorKind::InputFormat => 3,
        ErrorKind::Computation => 4,
        ErrorKind::Internal => 5,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn main() -> ExitCode {
    let args = match config::apply(std::env::args_os().collect()) {
        Ok(args) => args,
        Err(e) => return fail(e),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Persist(a) => commands::persist(a),
        Command::Score(a) => commands::score(a),
        Command::Extract(a) => commands::extract(a),
        Command::Match(a) => commands::match_cmd(a),
        Command::Pipeline(a) => commands::pipeline(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
