use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("config field `{field}`: {reason}")]
    Field { field: String, reason: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("unknown figure `{0}`; expected one of input-negativity, output-negativity, threshold, mixed-input, mixed-threshold, noise-ratio")]
    UnknownFigure(String),

    #[error("{points} points exceed the {engine} budget of {limit}")]
    BudgetExceeded {
        points: usize,
        limit: usize,
        engine: &'static str,
    },

    #[error("{context}: {source}")]
    Numerical {
        context: String,
        source: cvtele::Error,
    },

    #[error("output: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Field {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Core errors caused by bad inputs are config errors; the rest are
    /// numerical failures.
    pub fn from_core(context: impl Into<String>, source: cvtele::Error) -> Self {
        use cvtele::Error as E;
        let context = context.into();
        match source {
            E::InvalidParameter { .. }
            | E::InvalidGrid(_)
            | E::GridSpan { .. }
            | E::PumpRange(_)
            | E::NegativeNoise { .. }
            | E::GridMismatch(_)
            | E::Io(_) => CliError::Field {
                field: context,
                reason: source.to_string(),
            },
            _ => CliError::Numerical { context, source },
        }
    }

    /// 2 for configuration problems, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_)
            | CliError::Field { .. }
            | CliError::Read { .. }
            | CliError::UnknownFigure(_)
            | CliError::BudgetExceeded { .. } => 2,
            CliError::Numerical { .. } => 3,
            CliError::Output(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
