use std::fmt;

use crate::model::{DomainElement, NodeName, ShapeName};

/// 1-based position inside a source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceLocation {
    pub line: usize,
    pub column: usize,
}

impl SourceLocation {
    pub fn new(line: usize, column: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceLocation { line, column }
    }
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse {
        location: SourceLocation,
        message: String,
    },

    #[error("unsupported construct {term} at {location}")]
    UnsupportedConstruct {
        term: String,
        location: SourceLocation,
    },

    #[error("cyclic shape definitions: {}", render_cycle(.cycle))]
    CyclicSchema { cycle: Vec<ShapeName> },

    #[error("shape {0} is defined more than once")]
    DuplicateDefinition(ShapeName),

    #[error("shape name {0} has no interpretation")]
    UnboundShapeName(ShapeName),

    #[error("node name {0} has no interpretation")]
    ConstantNotInterpreted(NodeName),

    #[error("element {0} is not in the interpretation domain")]
    ElementNotInDomain(DomainElement),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(location: SourceLocation, message: impl Into<String>) -> Self {
        Error::Parse {
            location,
            message: message.into(),
        }
    }

    /// Location carried by the error, if it points into a source text.
    pub fn location(&self) -> Option<SourceLocation> {
        match self {
            Error::Parse { location, .. } | Error::UnsupportedConstruct { location, .. } => {
                Some(*location)
            }
            _ => None,
        }
    }
}

fn render_cycle(cycle: &[ShapeName]) -> String {
    cycle
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
