mod args;
mod commands;
mod error;
mod io;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let exec = cli.execution();
    let result = match cli.command {
        Command::Preprocess(a) => commands::preprocess::run(a, exec),
        Command::Train(a) => commands::train::run(a, exec),
        Command::Evaluate(a) => commands::evaluate::run(a, exec),
        Command::Explain(a) => commands::explain::run(a, exec),
        Command::Crossval(a) => commands::crossval::run(a, exec),
        Command::Circuit(a) => commands::circuit::run(a),
        Command::Synth(a) => commands::synth::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
