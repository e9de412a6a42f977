//! Library side of the `clone-bound` command-line tool.
//!
//! Exit status: 0 when every check of the subcommand passes, 1 when a check
//! fails, 2 on usage errors (bad flags, malformed parameters, unwritable
//! output path).

pub mod args;
pub mod commands;
pub mod format;

use std::path::Path;

pub use args::{Cli, Command, Format};
use commands::{Outcome, Records};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rendered output of one invocation.
pub struct Rendered {
    pub text: String,
    pub pass: bool,
}

pub fn render(outcome: &Outcome, format: Format) -> Result<Rendered, String> {
    let text = match (&outcome.records, format) {
        (Records::One(v), Format::Json) => format::to_json(v),
        (Records::One(v), Format::Csv) => format::to_csv(std::slice::from_ref(v)),
        (Records::Many(rows), Format::Json) => format::to_json(rows),
        (Records::Many(rows), Format::Csv) => format::to_csv(rows),
    }
    .map_err(|e| e.to_string())?;
    Ok(Rendered {
        text,
        pass: outcome.pass,
    })
}

/// Runs a parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<Rendered, String> {
    let (outcome, format) = match &cli.command {
        Command::Verify(a) => (commands::verify(a)?, a.format),
        Command::Optimize(a) => (commands::optimize(a)?, a.format),
        Command::Clone(a) => (commands::clone(a)?, a.format),
        Command::Signal(a) => (commands::signal(a)?, a.format),
        Command::Sweep(a) => (commands::sweep(a)?, a.format),
    };
    render(&outcome, format)
}

pub fn output_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Verify(a) => a.output.out.as_deref(),
        Command::Optimize(a) => a.output.out.as_deref(),
        Command::Clone(a) => a.output.out.as_deref(),
        Command::Signal(a) => a.output.out.as_deref(),
        Command::Sweep(a) => a.output.out.as_deref(),
    }
}
