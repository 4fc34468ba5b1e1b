//! Error taxonomy shared by every module of the crate.
//!
//! The set of kinds is closed: callers can match on [`ErrorKind`] to
//! distinguish the nine failure classes without string inspection.

use std::fmt;

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The closed set of error kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorKind {
    Arity,
    CompoundExpected,
    Functor,
    Indicator,
    ListExpected,
    Prolog,
    StructureExpected,
    Syntax,
    UnknownTerm,
}

impl ErrorKind {
    /// Every kind, in declaration order.
    pub const ALL: [ErrorKind; 9] = [
        ErrorKind::Arity,
        ErrorKind::CompoundExpected,
        ErrorKind::Functor,
        ErrorKind::Indicator,
        ErrorKind::ListExpected,
        ErrorKind::Prolog,
        ErrorKind::StructureExpected,
        ErrorKind::Syntax,
        ErrorKind::UnknownTerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Arity => "ArityError",
            ErrorKind::CompoundExpected => "CompoundExpectedError",
            ErrorKind::Functor => "FunctorError",
            ErrorKind::Indicator => "IndicatorError",
            ErrorKind::ListExpected => "ListExpectedError",
            ErrorKind::Prolog => "PrologError",
            ErrorKind::StructureExpected => "StructureExpectedError",
            ErrorKind::Syntax => "SyntaxError",
            ErrorKind::UnknownTerm => "UnknownTermError",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Line/column position inside parsed text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arity requested from a term that has none (a variable).
    #[error("ArityError: {0}")]
    Arity(String),
    /// Argument access on an atomic term.
    #[error("CompoundExpectedError: {0}")]
    CompoundExpected(String),
    /// Functor requested from a variable or a number.
    #[error("FunctorError: {0}")]
    Functor(String),
    /// Indicator requested from a term without one.
    #[error("IndicatorError: {0}")]
    Indicator(String),
    #[error("ListExpectedError: {0}")]
    ListExpected(String),
    /// General runtime failure: I/O, arithmetic, invalid arguments.
    #[error("PrologError: {0}")]
    Prolog(String),
    #[error("StructureExpectedError: {0}")]
    StructureExpected(String),
    #[error("SyntaxError at {location}: {message}")]
    Syntax { message: String, location: Location },
    /// No host equivalent exists for the term (or vice versa).
    #[error("UnknownTermError: {0}")]
    UnknownTerm(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Arity(_) => ErrorKind::Arity,
            Error::CompoundExpected(_) => ErrorKind::CompoundExpected,
            Error::Functor(_) => ErrorKind::Functor,
            Error::Indicator(_) => ErrorKind::Indicator,
            Error::ListExpected(_) => ErrorKind::ListExpected,
            Error::Prolog(_) => ErrorKind::Prolog,
            Error::StructureExpected(_) => ErrorKind::StructureExpected,
            Error::Syntax { .. } => ErrorKind::Syntax,
            Error::UnknownTerm(_) => ErrorKind::UnknownTerm,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::Arity(m)
            | Error::CompoundExpected(m)
            | Error::Functor(m)
            | Error::Indicator(m)
            | Error::ListExpected(m)
            | Error::Prolog(m)
            | Error::StructureExpected(m)
            | Error::UnknownTerm(m) => m,
            Error::Syntax { message, .. } => message,
        }
    }

    /// Source position, only present on syntax errors.
    pub fn location(&self) -> Option<Location> {
        match self {
            Error::Syntax { location, .. } => Some(*location),
            _ => None,
        }
    }

    pub(crate) fn prolog(message: impl Into<String>) -> Self {
        Error::Prolog(message.into())
    }

    pub(crate) fn syntax(message: impl Into<String>, line: usize, column: usize) -> Self {
        Error::Syntax {
            message: message.into(),
            location: Location { line, column },
        }
    }

    /// Prefixes the message with `context`, keeping the kind.
    pub(crate) fn context(self, context: impl fmt::Display) -> Self {
        match self {
            Error::Arity(m) => Error::Arity(format!("{context}: {m}")),
            Error::CompoundExpected(m) => Error::CompoundExpected(format!("{context}: {m}")),
            Error::Functor(m) => Error::Functor(format!("{context}: {m}")),
            Error::Indicator(m) => Error::Indicator(format!("{context}: {m}")),
            Error::ListExpected(m) => Error::ListExpected(format!("{context}: {m}")),
            Error::Prolog(m) => Error::Prolog(format!("{context}: {m}")),
            Error::StructureExpected(m) => Error::StructureExpected(format!("{context}: {m}")),
            Error::Syntax { message, location } => Error::Syntax {
                message: format!("{context}: {message}"),
                location,
            },
            Error::UnknownTerm(m) => Error::UnknownTerm(format!("{context}: {m}")),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Prolog(format!("i/o failure: {err}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_closed_and_named() {
        assert_eq!(ErrorKind::ALL.len(), 9);
        let names: Vec<_> = ErrorKind::ALL.iter().map(|k| k.name()).collect();
        assert!(names.iter().all(|n| n.ends_with("Error")));
    }

    #[test]
    fn context_keeps_kind() {
        let err = Error::UnknownTerm("X".into()).context("index 3");
        assert_eq!(err.kind(), ErrorKind::UnknownTerm);
        assert_eq!(err.message(), "index 3: X");
    }

    #[test]
    fn syntax_error_carries_location() {
        let err = Error::syntax("unexpected end", 2, 7);
        assert_eq!(err.location(), Some(Location { line: 2, column: 7 }));
        assert_eq!(err.to_string(), "SyntaxError at 2:7: unexpected end");
    }
}
