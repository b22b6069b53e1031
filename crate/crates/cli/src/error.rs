use thiserror::Error;

use weakhopf::Witness;

/// A 1-based line and column in the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn of(src: &str, offset: usize) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Location { line, column }
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

fn at(loc: &Option<Location>) -> String {
    loc.map(|l| format!(" at {l}")).unwrap_or_default()
}

fn witness_text(w: &Option<Box<Witness>>) -> String {
    match w {
        Some(w) => format!(" (witness {})", w.labels.join(", ")),
        None => String::new(),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error{}: {message}", at(.location))]
    Parse { location: Option<Location>, message: String },
    #[error("resolution error{}: {message}", at(.location))]
    Resolution { location: Option<Location>, message: String },
    #[error("validation error in `{structure}`: {check}{}", witness_text(.witness))]
    Validation { structure: String, check: String, witness: Option<Box<Witness>> },
    #[error("suite `{suite}` needs {expected}")]
    SuiteMismatch { suite: String, expected: String },
    #[error("{0}")]
    Library(#[from] weakhopf::Error),
}

impl CliError {
    /// Wraps a library error raised while building a declared structure.
    pub fn validation(structure: &str, e: weakhopf::Error) -> Self {
        match e {
            weakhopf::Error::CheckFailed { check, witness } => CliError::Validation { structure: structure.to_string(), check, witness },
            other => CliError::Validation { structure: structure.to_string(), check: other.to_string(), witness: None },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
