//! A small declarative language for series experiments.
//!
//! ```text
//! map Psi = [[1, 0, -1], [0, 1, 1]]
//! series S = push(Psi, odot(mcdonald(2), gf([1], 1), gf([1], 1)))
//! compare S, ruled_e1(0, 1) order 10
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{Expr, Script, Stmt, StmtKind, Term, TermKind};
pub use eval::{evaluate, CommandResult};
pub use parser::parse;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NameKind {
    Series,
    Map,
    Functional,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Series => "series",
            NameKind::Map => "map",
            NameKind::Functional => "functional",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{span}: syntax error: expected {}, found {found}", .expected.join(" or "))]
    Syntax { span: Span, expected: Vec<String>, found: String },

    #[error("{span}: `{name}` is already bound")]
    DuplicateName { span: Span, name: String },

    #[error("{span}: `{name}` is not bound")]
    UnboundName { span: Span, name: String },

    #[error("{span}: `{name}` is not a {expected}")]
    WrongKind { span: Span, name: String, expected: NameKind },

    #[error("{span}: {source}")]
    Eval { span: Span, source: crate::error::Error },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax { span, .. }
            | DslError::DuplicateName { span, .. }
            | DslError::UnboundName { span, .. }
            | DslError::WrongKind { span, .. }
            | DslError::Eval { span, .. } => *span,
        }
    }
}

/// Parses and evaluates a script.
pub fn run(text: &str) -> Result<Vec<CommandResult>, DslError> {
    evaluate(&parse(text)?)
}
