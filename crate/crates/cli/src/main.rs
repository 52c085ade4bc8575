use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use conformal5_cli::{command_line, exit, run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    let line = command_line(&argv[1..]);
    let mut stdout = std::io::stdout().lock();
    let code = match run(&cli, &line) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            if let Some(note) = out.note {
                eprintln!("{note}");
            }
            exit::OK
        }
        Err(f) => {
            if let Some(s) = &f.stdout {
                let _ = stdout.write_all(s.as_bytes());
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
