//! Command-line front end for `shearlab`.

pub mod commands;
pub mod document;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{execute, Cli};
pub use report::{CliError, Exit, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name), runs the command and renders
/// the report. Errors go to `stderr` in text mode and into the report in
/// JSON mode.
pub fn run<I, T>(args: I, color: bool) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Output {
                    stdout: String::new(),
                    stderr: text,
                    code: Exit::Usage.code(),
                },
            };
        }
    };
    let report = execute(&cli);
    let code = report.exit.code();
    if cli.json {
        return Output {
            stdout: report.render_json(),
            stderr: String::new(),
            code,
        };
    }
    let mut text = report.clone();
    let message = text.message.take();
    Output {
        stdout: text.render_text(color),
        stderr: message.map_or(String::new(), |m| format!("error ({}): {m}\n", report.exit.kind())),
        code,
    }
}
