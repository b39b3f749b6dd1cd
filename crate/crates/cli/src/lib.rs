//! The `singwave` command line.
//!
//! Exit codes: 0 success, 2 usage or I/O, 3 parse, 4 domain or singularity, 5 tolerance.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use clap::Parser;

pub use config::{Cli, RunConfig};
pub use error::CliError;

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let reason = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(reason).line());
            return 2;
        }
    };
    match RunConfig::from_cli(cli).and_then(|cfg| commands::run(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.line());
            e.exit_code()
        }
    }
}
