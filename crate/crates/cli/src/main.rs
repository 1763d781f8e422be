use clap::Parser;

use chua_dual_cli::args::{Cli, Command};
use chua_dual_cli::commands;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return;
            }
            eprint!("{err}");
            std::process::exit(1);
        }
    };
    let result = match &cli.command {
        Command::Simulate(args) => commands::cmd_simulate(args),
        Command::Sweep(kind) => commands::cmd_sweep(kind),
        Command::Synthesize(args) => commands::cmd_synthesize(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
