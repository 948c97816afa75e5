mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qprl_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{}: {source}", path.display())]
    File {
        path: std::path::PathBuf,
        source: qprl_core::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use qprl_core::gridworld::MapError;
        use qprl_core::Error;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::InvalidConfig(_) | Error::InvalidParams(_) | Error::ParadigmMismatch { .. }) => 2,
            CliError::Core(Error::Map(MapError::UnknownEnv(_))) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => commands::run(a),
        Command::Transfer(a) => commands::transfer(a),
        Command::DumpMap(a) => commands::dump_map(a),
        Command::Complexity(a) => commands::complexity(a),
        Command::Chart(a) => commands::chart(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qprl: {e}");
            if e.exit_code() == 2 {
                eprintln!("Try 'qprl --help' for more information.");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
