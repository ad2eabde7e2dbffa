use std::fmt;

use super::Span;
use crate::catalog::PrintedSign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Series { name: String, expr: Expr },
    Map { name: String, rows: Vec<Vec<i64>> },
    Functional { name: String, weights: Vec<i64> },
    Expand { expr: Expr, order: i64, functional: Option<String> },
    Compare { left: Expr, right: Expr, order: i64, functional: Option<String> },
}

/// A product `term * term * ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Name(String),
    One,
    /// `(1 - t^m)^(-n)`
    Gf(Vec<i64>, i64),
    Mcdonald(i64),
    Pn(i64, i64),
    RuledE1(i64, i64),
    Ruled(i64, i64, i64),
    Scroll3(i64, i64, i64, PrintedSign),
    Odot(Vec<Expr>),
    Push(String, Box<Expr>),
}

fn vector(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

fn suffix(f: &mut fmt::Formatter<'_>, order: i64, functional: &Option<String>) -> fmt::Result {
    write!(f, " order {order}")?;
    if let Some(name) = functional {
        write!(f, " functional {name}")?;
    }
    Ok(())
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Series { name, expr } => write!(f, "series {name} = {expr}"),
            StmtKind::Map { name, rows } => {
                write!(f, "map {name} = [")?;
                for (i, r) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    vector(f, r)?;
                }
                write!(f, "]")
            }
            StmtKind::Functional { name, weights } => {
                write!(f, "functional {name} = ")?;
                vector(f, weights)
            }
            StmtKind::Expand { expr, order, functional } => {
                write!(f, "expand {expr}")?;
                suffix(f, *order, functional)
            }
            StmtKind::Compare { left, right, order, functional } => {
                write!(f, "compare {left}, {right}")?;
                suffix(f, *order, functional)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Name(n) => write!(f, "{n}"),
            TermKind::One => write!(f, "one"),
            TermKind::Gf(m, n) => {
                write!(f, "gf(")?;
                vector(f, m)?;
                write!(f, ", {n})")
            }
            TermKind::Mcdonald(chi) => write!(f, "mcdonald({chi})"),
            TermKind::Pn(n, p) => write!(f, "pn({n}, {p})"),
            TermKind::RuledE1(g, e) => write!(f, "ruled_e1({g}, {e})"),
            TermKind::Ruled(g, e, p) => write!(f, "ruled({g}, {e}, {p})"),
            TermKind::Scroll3(n, h, p, s) => write!(f, "scroll3({n}, {h}, {p}, {})", s.symbol()),
            TermKind::Odot(args) => {
                write!(f, "odot(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            TermKind::Push(map, e) => write!(f, "push({map}, {e})"),
        }
    }
}
