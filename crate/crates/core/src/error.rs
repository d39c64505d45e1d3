use std::fmt;

use thiserror::Error;

use crate::model::Diagnostic;

/// Guard rails that bound explicit enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    States,
    Contexts,
    Models,
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cap::States => "state cap (--max-states)",
            Cap::Contexts => "context cap (--max-contexts)",
            Cap::Models => "model enumeration cap",
        })
    }
}

/// A located error raised while reading a model document. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("invalid model:\n{}", render_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("{cap} exceeded: {required} required, limit is {limit}")]
    Capacity {
        cap: Cap,
        required: u128,
        limit: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn render_diagnostics(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| format!("  {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
