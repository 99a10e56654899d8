use std::fmt;
use std::path::Path;

use qamplify_core::error::ErrorCategory;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_NUMERIC: u8 = 4;

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { code: EXIT_NUMERIC, message: message.into() }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::usage(format!("{}: {err}", path.display()))
    }

    pub fn context(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }

    pub fn code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<qamplify_core::Error> for CliError {
    fn from(e: qamplify_core::Error) -> Self {
        let code = match e.category() {
            ErrorCategory::Usage | ErrorCategory::Io => EXIT_USAGE,
            ErrorCategory::Data => EXIT_DATA,
            ErrorCategory::Numeric => EXIT_NUMERIC,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
