use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qhilbert_cli::{emit_report, exit_code, parse_workspace, run_checks, Format, Options, EXIT_INVALID};

#[derive(Parser)]
#[command(name = "qhilbert", version, about = "Check Hilbert structures on finite quantale modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite over definition files.
    Check {
        /// axioms, structure, canonical, hilbert-unique, lemmas, locale-openness, matrix-roundtrip or all
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cap on exhaustive search sizes.
        #[arg(long, default_value_t = qhilbert::qmodule::DEFAULT_BOUND)]
        bound: usize,
        /// Record elapsed milliseconds instead of 0.
        #[arg(long)]
        timings: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Check {
        suite,
        format,
        bound,
        timings,
        files,
    } = cli.command;
    let ws = match parse_workspace(&files) {
        Ok(ws) => ws,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let report = match run_checks(&ws, &suite, Options { bound, timings }) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = emit_report(&report, format, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(exit_code(&report) as u8)
}
