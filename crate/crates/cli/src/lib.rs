//! Library side of the `rankone` command: file formats, builtin tensors,
//! reports, verification suites, sweeps and searches.

pub mod builtin;
pub mod formats;
pub mod report;
pub mod search;
pub mod sweep;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input text; `position` is a 1-based column.
    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rankone_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Quotes a CSV field when it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
