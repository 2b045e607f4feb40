use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use hadamard::cli::{run, Cli, JobSpec};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let payload = if !cli.command.needs_input() {
        String::new()
    } else if let Some(path) = &cli.input {
        match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    } else {
        let mut s = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut s) {
            eprintln!("cannot read standard input: {e}");
            return ExitCode::from(1);
        }
        s
    };
    let job = JobSpec {
        command: cli.command,
        payload,
        seed: cli.seed,
        format: cli.format,
    };
    let (code, text) = run(&job);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if code != 0 && cli.out.is_some() {
        eprint!("{text}");
    }
    ExitCode::from(code as u8)
}
