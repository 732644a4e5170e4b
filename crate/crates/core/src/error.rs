use std::fmt;

use thiserror::Error;

/// Errors produced by the numeric library and the evaluation harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BinghamError {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The requested distribution is more concentrated than the representable cap.
    #[error("{op}: concentration overflow: {detail}")]
    ConcentrationOverflow { op: &'static str, detail: String },

    /// A filter transition was called on a state in the wrong stage.
    #[error("{op}: expected a {expected} state, got {found}")]
    StageMismatch {
        op: &'static str,
        expected: Stage,
        found: Stage,
    },

    /// A scenario configuration could not be parsed.
    #[error("config line {line}: {detail}")]
    Config { line: usize, detail: String },
}

impl BinghamError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Self::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn overflow(op: &'static str, detail: impl Into<String>) -> Self {
        Self::ConcentrationOverflow {
            op,
            detail: detail.into(),
        }
    }

    /// True for errors raised by numeric routines (as opposed to parsing).
    pub fn is_numeric(&self) -> bool {
        !matches!(self, Self::Config { .. })
    }
}

/// Lifecycle position of a filter state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Predicted,
    Estimated,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Predicted => f.write_str("predicted"),
            Stage::Estimated => f.write_str("estimated"),
        }
    }
}

pub type Result<T> = std::result::Result<T, BinghamError>;
