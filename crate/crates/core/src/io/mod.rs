//! Parsers and serializers: N-Triples, a Turtle subset, and tabular data
//! reified into n-ary relation instances.

pub(crate) mod lexer;
pub mod ntriples;
pub mod reify;
pub mod turtle;

use thiserror::Error;

use crate::error::ModelError;

pub use ntriples::{parse_ntriples, parse_term, serialize_ntriples};
pub use reify::{read_csv, reify_table, Record, ReifyError, TableSpec};
pub use turtle::{parse_turtle, ParseReport};

/// A failed parse. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {source}")]
    Model {
        line: usize,
        column: usize,
        #[source]
        source: ModelError,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Model { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::Model { column, .. } => *column,
        }
    }
}
