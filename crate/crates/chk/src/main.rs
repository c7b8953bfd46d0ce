use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use chk::cli::Cli;
use chk::commands::{run, EXIT_DOMAIN};

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("chk: {e}");
            EXIT_DOMAIN
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
