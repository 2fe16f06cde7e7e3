//! Error classification for the command line: every failure maps to one of
//! the documented exit codes.

use std::fmt;

/// Exit codes: 0 success, 1 usage (handled by the argument parser),
/// 2 unparseable input content, 3 I/O, 4 violated domain precondition.
#[derive(Debug)]
pub enum CliError {
    /// Input file content could not be parsed (exit 2).
    Parse(String),
    /// Filesystem failure (exit 3).
    Io(String),
    /// Inputs parsed but violate an algorithm precondition (exit 4).
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Io(_) => 3,
            CliError::Domain(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) | CliError::Io(msg) | CliError::Domain(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<cpdetect::Error> for CliError {
    fn from(err: cpdetect::Error) -> CliError {
        use cpdetect::Error as E;
        match err {
            E::BadHeader { .. } | E::MalformedRows(_) | E::EmptyLog | E::EmptyEdgeList => {
                CliError::Parse(err.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError::Io(err.to_string())
    }
}

/// JSON syntax/shape problems in input files are parse failures.
impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> CliError {
        CliError::Parse(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Read a file with the path attached to any error message.
pub fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Write a file with the path attached to any error message.
pub fn write_file(path: &std::path::Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Create a directory (and parents) if it does not exist yet.
pub fn ensure_dir(path: &std::path::Path) -> CliResult<()> {
    std::fs::create_dir_all(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
