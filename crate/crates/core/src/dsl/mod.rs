//! Expression language for classes, correspondences and operators, plus the
//! identity registry and suite runner.
//!
//! Tokens: numbers `3`, `1/3`; classes on `F` `F g c Cx o S[l] pt[l] phi_[l]`;
//! classes on `X` `X h x line[l]`; correspondences `D I Gh Gh2 Gphi I1 I2
//! FxO OxF FxF`; coefficients `g1 g2 c1 c2 a`; operators `phi^* phi_* T`
//! (also `phi*`, `phi_`, `φ*`, `φ_*`); `+ - * ^ ( )`; composition `@` or
//! `∘`; transpose `tr(..)` or postfix `ᵗ`; functions `push(C, u)`,
//! `pull(C, u)`, `Psi(u)`, `Phi(v)`, `deg(u)`.

pub mod ast;
pub mod eval;
pub mod gen;
pub mod lexer;
pub mod parser;
pub mod registry;
pub mod sort;

use std::fmt;

use serde::Serialize;

pub use ast::{print, Atom, Expr, ExprKind, Func, Indexed};
pub use eval::{eval_str, Evaluator, Value};
pub use parser::parse;
pub use registry::{run_suite, IdentityRecord, Registry, SuiteReport, SuiteResult};
pub use sort::Sort;

/// Byte range in the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    UnknownAtom,
    Grading,
    Eval,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lexical => "lexical error",
            ErrorKind::Syntax => "syntax error",
            ErrorKind::UnknownAtom => "unknown atom",
            ErrorKind::Grading => "grading error",
            ErrorKind::Eval => "evaluation error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DslError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: Span,
    /// 1-based
    pub line: usize,
    /// 1-based, in characters
    pub column: usize,
}

impl DslError {
    pub fn at(src: &str, span: Span, kind: ErrorKind, message: &str) -> Self {
        let before = &src[..span.start.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        DslError {
            kind,
            message: message.to_string(),
            span,
            line,
            column,
        }
    }

    pub fn lexical(src: &str, span: Span, message: &str) -> Self {
        Self::at(src, span, ErrorKind::Lexical, message)
    }

    pub fn eval(message: &str) -> Self {
        DslError {
            kind: ErrorKind::Eval,
            message: message.to_string(),
            span: Span::default(),
            line: 1,
            column: 1,
        }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

impl std::error::Error for DslError {}
