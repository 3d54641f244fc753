//! Lexer, parser, validator, and pretty-printer for the CTC DSL: a minimal
//! integer goto-language whose `ttreg` registers can be written from the
//! future with `send` and observed at the start of time with `receive`.

pub mod ast;
mod lexer;
mod parser;
mod pretty;
mod validate;

pub use ast::{BinOp, CmpOp, Cond, Domain, Expr, Instr, Program, RegisterDecl, Statement};
pub use parser::parse;
pub use pretty::{pretty, render_cond, render_expr, render_instr};
pub use validate::validate;

use serde::Serialize;
use thiserror::Error;

/// A lexical or grammatical error with its source position.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at {line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UndeclaredRegister,
    DuplicateRegister,
    DuplicateLabel,
    UnknownLabel,
    DuplicateReceive,
    EmptyDomain,
    LabelTableInconsistent,
}

/// A single structural violation, identifying the offending token and line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub token: String,
    pub line: u32,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self.kind {
            ViolationKind::UndeclaredRegister => "undeclared register",
            ViolationKind::DuplicateRegister => "duplicate register declaration",
            ViolationKind::DuplicateLabel => "duplicate label",
            ViolationKind::UnknownLabel => "unknown label",
            ViolationKind::DuplicateReceive => "register received more than once",
            ViolationKind::EmptyDomain => "empty domain (lo > hi) for register",
            ViolationKind::LabelTableInconsistent => "label table disagrees with statements in",
        };
        write!(f, "line {}: {} `{}`", self.line, what, self.token)
    }
}

/// Result of [`validate`]: an empty list means the program is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Why a source text failed to become a [`Program`]. Exactly one primary
/// diagnostic per input: either the first syntax error or the first
/// validation violation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Invalid(Violation),
}

impl ParseError {
    pub fn line(&self) -> u32 {
        match self {
            ParseError::Syntax(s) => s.line,
            ParseError::Invalid(v) => v.line,
        }
    }
}
