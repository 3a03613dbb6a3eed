//! The `fsr` command line: argument parsing, exit-code protocol, workspace cache
//! and renderers over the `fsr-core` pipeline.

pub mod args;
pub mod commands;
pub mod render;
pub mod workspace;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{cache_key, execute, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use workspace::{write_atomic, Outcome, Workspace};

/// Runs one command line against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command line, writing to the given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => Outcome::ok(e.to_string()),
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: e.to_string() },
    };
    // Nothing useful can be done if the terminal itself fails.
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

fn dispatch(cli: &Cli) -> Outcome {
    let config = cli.global.config();
    let mut outcome = match &cli.global.workspace {
        None => execute(&cli.command, &config),
        Some(dir) => match Workspace::open(dir) {
            Err(e) => return io_failure("cannot open workspace", dir, &e),
            Ok(ws) => {
                let key = cache_key(&cli.command, &config);
                match ws.get(&key) {
                    Some(hit) => hit,
                    None => {
                        let fresh = execute(&cli.command, &config);
                        if let Err(e) = ws.put(&key, &fresh) {
                            return io_failure("cannot write workspace", dir, &e);
                        }
                        fresh
                    }
                }
            }
        },
    };
    if let Command::Render(r) = &cli.command {
        if let (Some(path), EXIT_OK) = (&r.output, outcome.code) {
            if let Err(e) = write_atomic(path, outcome.stdout.as_bytes()) {
                return io_failure("cannot write output", path, &e);
            }
            outcome.stdout.clear();
        }
    }
    outcome
}

fn io_failure(what: &str, path: &std::path::Path, e: &io::Error) -> Outcome {
    Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("error: {what} {}: {e}\n", path.display()) }
}
