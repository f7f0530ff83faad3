use std::process::ExitCode;

use clap::Parser;
use supervol_cli::{has_failures, render, run, Cli, EXIT_DOMAIN, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(env) => {
            print!("{}", render(&env, cli.format));
            if has_failures(&env) {
                ExitCode::from(EXIT_DOMAIN as u8)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
