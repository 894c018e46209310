use thiserror::Error;

/// Errors raised while validating inputs or evaluating a neutrality boundary value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NbError {
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("expected a {expected} table, got {rows}x{cols}")]
    Dimension {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("degenerate table: {0}")]
    DegenerateTable(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("infeasible exchange: cell {cell} would become negative")]
    InfeasibleExchange { cell: &'static str },

    #[error("F statistic is infinite: zero within-group variance with distinct group means")]
    InfiniteF,

    #[error("F statistic is indeterminate: all observations are identical")]
    IndeterminateF,

    #[error("correlation undefined: {0} has zero variance")]
    UndefinedCorrelation(&'static str),

    #[error("degenerate correlation r = {0}: Fisher z diverges")]
    DegenerateCorrelation(f64),

    #[error("{what} = {value} is outside the open interval (-1, 1)")]
    Domain { what: &'static str, value: f64 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl NbError {
    pub(crate) fn validation(field: &'static str, reason: impl Into<String>) -> Self {
        NbError::Validation {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        NbError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, NbError>;
