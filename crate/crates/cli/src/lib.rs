//! Command-line front end of `conformal5`. The binary is a thin wrapper
//! around [`run`]; commands print one JSON object (or CSV, or a text report)
//! and signal failures through the exit codes in [`exit`].

pub mod args;
pub mod commands;
pub mod figures;
pub mod svg;

pub use args::Cli;
pub use commands::{Failure, Outcome, Output};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DOMAIN_INFINITY: i32 = 3;
    pub const NOT_ON_MANIFOLD: i32 = 4;
    pub const BAD_STEP: i32 = 5;
    pub const IO: i32 = 6;
}

/// Runs a parsed command. `command_line` is the invocation without the
/// program name; the figure command records it in its output.
pub fn run(cli: &Cli, command_line: &str) -> Outcome {
    use args::{ChartCommand, Command};
    match &cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Chart(ChartCommand::ToAmbient(a)) => commands::chart_to_ambient_cmd(a),
        Command::Chart(ChartCommand::ToChart(a)) => commands::chart_to_chart_cmd(a),
        Command::Metric(a) => commands::metric(a),
        Command::Christoffel(a) => commands::christoffel(a),
        Command::Geodesic(a) => commands::geodesic(a),
        Command::Figure(a) => commands::figure(a, command_line),
        Command::Verify(a) => commands::verify(a),
    }
}

/// Joins arguments with single spaces, quoting any that contain whitespace
/// or quotes.
pub fn command_line<S: AsRef<str>>(args: &[S]) -> String {
    args.iter()
        .map(|a| {
            let a = a.as_ref();
            if a.is_empty() || a.chars().any(|c| c.is_whitespace() || c == '\'' || c == '"') {
                format!("'{}'", a.replace('\'', r"'\''"))
            } else {
                a.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
