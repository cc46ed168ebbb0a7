use std::process::ExitCode;

use clap::Parser;
use gyroshape::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let result = cli::run(&args);
    match &result {
        Ok(doc) => match cli::to_json(doc) {
            Ok(text) => print!("{text}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(cli::EXIT_INPUT_ERROR as u8);
            }
        },
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(cli::exit_code(&result) as u8)
}
