use std::fmt;

use xplain_core::planning::StepShapeError;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unsupported requirement {0}")]
    UnsupportedRequirement(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("undeclared predicate {0}")]
    UndeclaredPredicate(String),
    #[error("undeclared object {0}")]
    UndeclaredObject(String),
    #[error("undeclared type {0}")]
    UndeclaredType(String),
    #[error("{name} takes {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("variable ?{variable} of action {action} is not a parameter")]
    UnboundVariable { action: String, variable: String },
    #[error("duplicated effect {0}")]
    DuplicateEffect(String),
    #[error("{0} is declared twice")]
    Duplicate(String),
    #[error("object {object} is not of type {expected}")]
    IllTyped { object: String, expected: String },
    #[error("problem is for domain {found}, expected {expected}")]
    DomainMismatch { expected: String, found: String },
    #[error("unknown action {0}")]
    UnknownAction(String),
    #[error("{0} is not a ground action of this problem")]
    NoGroundAction(String),
    #[error("{0}")]
    Group(StepShapeError),
}

/// A parse or cross-check error with the position it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {kind}")]
pub struct PddlError {
    pub pos: Pos,
    pub kind: ErrorKind,
}

impl PddlError {
    pub fn new(pos: Pos, kind: ErrorKind) -> Self {
        PddlError { pos, kind }
    }

    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        PddlError { pos, kind: ErrorKind::Syntax(msg.into()) }
    }
}
