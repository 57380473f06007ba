use fsmt_core::Violation;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("PARSE_ERROR at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("VALIDATION_ERROR: {}", join(.0))]
    Validation(Vec<Violation>),
    #[error(transparent)]
    Core(#[from] fsmt_core::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<serde_json::Error> for FormatError {
    fn from(err: serde_json::Error) -> Self {
        FormatError::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
