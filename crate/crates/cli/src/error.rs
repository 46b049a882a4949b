use serde::Serialize;
use thiserror::Error;

use crate::ast::Pos;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("undefined name {name} at line {}, column {}", pos.line, pos.column)]
    Undefined { name: String, pos: Pos },
    #[error("duplicate name {name} at {pos} (first declared at {first})")]
    Duplicate { name: String, pos: Pos, first: Pos },
    #[error("inhomogeneous entry {entry} at {pos}: {detail}")]
    Inhomogeneous { entry: String, pos: Pos, detail: String },
    #[error("{context} at {pos}: {source}")]
    Engine { context: String, pos: Pos, source: reldep::Error },
    #[error("{0}")]
    Io(String),
}

/// Machine-readable form of an error, embedded in the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl CliError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        CliError::Syntax { pos, message: message.into() }
    }

    pub fn engine(context: impl Into<String>, pos: Pos, source: reldep::Error) -> Self {
        CliError::Engine { context: context.into(), pos, source }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            CliError::Syntax { pos, .. }
            | CliError::Undefined { pos, .. }
            | CliError::Duplicate { pos, .. }
            | CliError::Inhomogeneous { pos, .. }
            | CliError::Engine { pos, .. } => Some(*pos),
            CliError::Io(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax",
            CliError::Undefined { .. } => "undefined-name",
            CliError::Duplicate { .. } => "duplicate-name",
            CliError::Inhomogeneous { .. } => "inhomogeneous-entry",
            CliError::Engine { source, .. } => source.kind(),
            CliError::Io(_) => "io",
        }
    }

    pub fn object(&self) -> ErrorObject {
        let pos = self.pos();
        ErrorObject {
            kind: self.kind().into(),
            message: self.to_string(),
            line: pos.map(|p| p.line),
            column: pos.map(|p| p.column),
        }
    }
}
