use std::fmt;

use singwave_core::{Error, ErrorKind};

/// Everything a subcommand can fail with, each mapped to one exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
    Tolerance(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e.kind() {
                ErrorKind::Parse => "parse",
                ErrorKind::Domain => "domain",
                ErrorKind::Tolerance => "tolerance",
            },
            CliError::Tolerance(_) => "tolerance",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "usage" | "io" => 2,
            "parse" => 3,
            "domain" => 4,
            _ => 5,
        }
    }

    /// `error: kind=<kind> reason=<message>` on a single line.
    pub fn line(&self) -> String {
        let reason = self.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error: kind={} reason={reason}", self.kind())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Tolerance(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
