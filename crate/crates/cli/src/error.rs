use std::fmt;

use mslevy::Error;

pub const VALIDATION: i32 = 1;
pub const USAGE: i32 = 2;
pub const NUMERICAL: i32 = 3;
pub const BLOW_UP: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn io(what: &str, e: std::io::Error) -> Self {
        Self {
            code: NUMERICAL,
            message: format!("{what}: {e}"),
        }
    }

    /// Wraps a library error, naming the formula or routine that raised it.
    pub fn numeric(context: &str, e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_)
            | Error::Domain(_)
            | Error::GridMismatch(_)
            | Error::Parse(_)
            | Error::NotImplemented(_) => USAGE,
            Error::BlowUp { .. } => BLOW_UP,
            _ => NUMERICAL,
        };
        Self {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T> Context<T> for mslevy::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|e| CliError::numeric(&what(), e))
    }
}
