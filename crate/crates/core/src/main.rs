use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use hopfolog::cli::{exit_code, run, Cli, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let started = Instant::now();
    let mut buf = Vec::new();
    let result = run(&cli, &mut buf);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(&buf);
    let _ = stdout.flush();
    if !cli.golden {
        let verb = cli.command.as_ref().map_or("none", |c| c.name());
        eprintln!(
            "hopfolog {} | {verb} | {} ms",
            env!("CARGO_PKG_VERSION"),
            started.elapsed().as_millis()
        );
    }
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Invalid) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
