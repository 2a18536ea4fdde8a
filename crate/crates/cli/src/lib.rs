//! Command-line front end for `skolemgen`.
//!
//! Exit codes: 0 ok, 2 usage, 3 resource limit, 4 I/O, 5 invalid input.

pub mod args;
pub mod commands;
pub mod exit;
pub mod record;
pub mod render;

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};

/// Standard streams, injectable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut (dyn Write + Send),
    pub stderr: &'a mut dyn Write,
}

pub fn run<I, T>(argv: I, io: &mut Io<'_>) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == exit::OK {
                io.stdout.write_all(rendered.as_bytes())
            } else {
                io.stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::CountOpen(a) => commands::count_open(&a, io),
        Command::Enumerate(a) => commands::enumerate(&a, io),
        Command::Verify(a) => commands::verify(&a, io),
        Command::Sts(a) => commands::sts(&a, io),
        Command::Render(a) => commands::render(&a, io),
    }
}
