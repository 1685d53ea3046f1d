//! Command-line front end for `modclose`.
//!
//! Every invocation writes exactly one JSON document to stdout. Exit codes:
//! 0 on success, 1 when a verification or oracle diff fails, 2 on bad input.

pub mod commands;
pub mod json;
pub mod workspace;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use commands::{Cli, Command, Report};
pub use workspace::{Workspace, WorkspaceFile};

/// Invalid input: unknown names, malformed files, infeasible requests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Result of one invocation, ready to print.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("reports always serialize");
    s.push('\n');
    s
}

fn input_error(message: &str, pretty: bool) -> Outcome {
    Outcome {
        code: 2,
        stdout: render(&json!({"error": {"kind": "input", "message": message}}), pretty),
        stderr: format!("modclose: error: {message}\n"),
    }
}

pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            let mut out = input_error(first, false);
            out.stderr = message;
            return out;
        }
    };
    let pretty = commands::opts(&cli.command).pretty;
    finish(commands::run(&cli.command), pretty)
}

fn finish(result: Result<Report, CliError>, pretty: bool) -> Outcome {
    match result {
        Ok(report) => Outcome {
            code: i32::from(report.failed),
            stdout: render(&report.value, pretty),
            stderr: if report.failed {
                "modclose: verification failed\n".to_string()
            } else {
                String::new()
            },
        },
        Err(e) => input_error(&e.message, pretty),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let ok = Report { value: json!({"a": 1}), failed: false };
        assert_eq!(finish(Ok(ok), false).code, 0);
        let failed = Report { value: json!({"all_passed": false}), failed: true };
        let out = finish(Ok(failed), false);
        assert_eq!(out.code, 1);
        assert_eq!(out.stdout, "{\"all_passed\":false}\n");
        let err = finish(Err(CliError::input("unknown module `X`")), false);
        assert_eq!(err.code, 2);
        assert!(err.stdout.contains("unknown module"));
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run_cli(["modclose", "--help"]).code, 0);
    }
}
