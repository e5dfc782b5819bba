//! `partbias` command-line front end.
//!
//! Data goes to stdout as JSON or CSV; warnings and diagnostics go to stderr.
//! Exit codes: 0 success, 2 invalid input, 3 budget exhausted.

mod args;
mod commands;
mod record;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Outcome;

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn run(cli: &Cli) -> partbias::Result<Outcome> {
    match &cli.command {
        Command::Count(a) => commands::count_cmd(a),
        Command::Asymptote(a) => commands::asymptote_cmd(a),
        Command::Volume(a) => commands::volume_cmd(a),
        Command::Progression(a) => commands::progression_cmd(a),
        Command::Conjecture(a) => commands::conjecture_cmd(a),
        Command::Direction(a) => commands::direction_cmd(a),
        Command::Ehrhart(a) => commands::ehrhart_cmd(a),
        Command::Scan(a) => commands::scan_cmd(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();

    let argv = match args::merge_config(std::env::args().collect()) {
        Ok(argv) => argv,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let cli = Cli::parse_from(argv);

    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_INVALID };
            return ExitCode::from(code);
        }
    };
    let mut record = outcome.record;
    if cli.timing {
        record.metadata.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::FAILURE;
    }
    if outcome.budget_exceeded {
        eprintln!("error: BudgetExceeded: some table cells were left undefined");
        return ExitCode::from(EXIT_BUDGET);
    }
    ExitCode::SUCCESS
}
