//! Recursive-descent parser with one token of lookahead.

use std::collections::HashMap;

use super::ast::{Expr, Script, Stmt, StmtKind, Term, TermKind};
use super::lexer::{tokenize, Tok, Token};
use super::{DslError, NameKind, Span};
use crate::catalog::PrintedSign;

const KEYWORDS: &[&str] = &[
    "series",
    "map",
    "functional",
    "expand",
    "compare",
    "order",
    "one",
    "gf",
    "mcdonald",
    "pn",
    "ruled_e1",
    "ruled",
    "scroll3",
    "odot",
    "push",
];

const TERM_START: &[&str] =
    &["identifier", "`one`", "`gf`", "`mcdonald`", "`pn`", "`ruled_e1`", "`ruled`", "`scroll3`", "`odot`", "`push`"];

pub fn parse(text: &str) -> Result<Script, DslError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, names: HashMap::new() };
    let mut statements = Vec::new();
    while p.peek().tok != Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    names: HashMap<String, NameKind>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::Syntax {
            span: t.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, DslError> {
        if self.at_keyword(kw) {
            Ok(self.next().span)
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn punct(&mut self, tok: Tok) -> Result<Span, DslError> {
        if self.peek().tok == tok {
            Ok(self.next().span)
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn ident(&mut self) -> Result<(String, Span), DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                Ok((s, self.next().span))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        match self.peek().tok {
            Tok::Int(i) => {
                self.next();
                Ok(i)
            }
            _ => self.error(&["integer"]),
        }
    }

    /// A fresh name for a new binding.
    fn bind(&mut self, kind: NameKind) -> Result<(String, Span), DslError> {
        let (name, span) = self.ident()?;
        if self.names.contains_key(&name) {
            return Err(DslError::DuplicateName { span, name });
        }
        self.names.insert(name.clone(), kind);
        Ok((name, span))
    }

    /// A previously bound name of the given kind.
    fn reference(&mut self, kind: NameKind) -> Result<String, DslError> {
        let (name, span) = self.ident()?;
        match self.names.get(&name) {
            None => Err(DslError::UnboundName { span, name }),
            Some(&k) if k != kind => Err(DslError::WrongKind { span, name, expected: kind }),
            Some(_) => Ok(name),
        }
    }

    fn statement(&mut self) -> Result<Stmt, DslError> {
        let span = self.peek().span;
        let kind = if self.at_keyword("series") {
            self.next();
            // the expression may not refer to the name being bound
            let (name, name_span) = self.ident_unbound()?;
            self.punct(Tok::Eq)?;
            let expr = self.expr()?;
            self.commit(name.clone(), name_span, NameKind::Series)?;
            StmtKind::Series { name, expr }
        } else if self.at_keyword("map") {
            self.next();
            let (name, _) = self.bind(NameKind::Map)?;
            self.punct(Tok::Eq)?;
            StmtKind::Map { name, rows: self.matrix()? }
        } else if self.at_keyword("functional") {
            self.next();
            let (name, _) = self.bind(NameKind::Functional)?;
            self.punct(Tok::Eq)?;
            StmtKind::Functional { name, weights: self.vector()? }
        } else if self.at_keyword("expand") {
            self.next();
            let expr = self.expr()?;
            let (order, functional) = self.order_suffix()?;
            StmtKind::Expand { expr, order, functional }
        } else if self.at_keyword("compare") {
            self.next();
            let left = self.expr()?;
            self.punct(Tok::Comma)?;
            let right = self.expr()?;
            let (order, functional) = self.order_suffix()?;
            StmtKind::Compare { left, right, order, functional }
        } else {
            return self.error(&["`series`", "`map`", "`functional`", "`expand`", "`compare`"]);
        };
        Ok(Stmt { kind, span })
    }

    fn ident_unbound(&mut self) -> Result<(String, Span), DslError> {
        let (name, span) = self.ident()?;
        if self.names.contains_key(&name) {
            return Err(DslError::DuplicateName { span, name });
        }
        Ok((name, span))
    }

    fn commit(&mut self, name: String, span: Span, kind: NameKind) -> Result<(), DslError> {
        if self.names.contains_key(&name) {
            return Err(DslError::DuplicateName { span, name });
        }
        self.names.insert(name, kind);
        Ok(())
    }

    fn order_suffix(&mut self) -> Result<(i64, Option<String>), DslError> {
        self.keyword("order")?;
        let order = self.int()?;
        let functional = if self.at_keyword("functional") {
            self.next();
            Some(self.reference(NameKind::Functional)?)
        } else {
            None
        };
        Ok((order, functional))
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let span = self.peek().span;
        let mut terms = vec![self.term()?];
        while self.peek().tok == Tok::Star {
            self.next();
            terms.push(self.term()?);
        }
        Ok(Expr { terms, span })
    }

    fn args<const N: usize>(&mut self) -> Result<[i64; N], DslError> {
        self.punct(Tok::LParen)?;
        let mut out = [0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.punct(Tok::Comma)?;
            }
            *slot = self.int()?;
        }
        self.punct(Tok::RParen)?;
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, DslError> {
        let span = self.peek().span;
        let word = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.error(TERM_START),
        };
        let kind = match word.as_str() {
            "one" => {
                self.next();
                TermKind::One
            }
            "gf" => {
                self.next();
                self.punct(Tok::LParen)?;
                let m = self.vector()?;
                self.punct(Tok::Comma)?;
                let n = self.int()?;
                self.punct(Tok::RParen)?;
                TermKind::Gf(m, n)
            }
            "mcdonald" => {
                self.next();
                let [chi] = self.args()?;
                TermKind::Mcdonald(chi)
            }
            "pn" => {
                self.next();
                let [n, p] = self.args()?;
                TermKind::Pn(n, p)
            }
            "ruled_e1" => {
                self.next();
                let [g, e] = self.args()?;
                TermKind::RuledE1(g, e)
            }
            "ruled" => {
                self.next();
                let [g, e, p] = self.args()?;
                TermKind::Ruled(g, e, p)
            }
            "scroll3" => {
                self.next();
                self.punct(Tok::LParen)?;
                let n = self.int()?;
                self.punct(Tok::Comma)?;
                let h = self.int()?;
                self.punct(Tok::Comma)?;
                let p = self.int()?;
                self.punct(Tok::Comma)?;
                let sign = match self.peek().tok {
                    Tok::Plus => PrintedSign::Plus,
                    Tok::Minus => PrintedSign::Minus,
                    _ => return self.error(&["`+`", "`-`"]),
                };
                self.next();
                self.punct(Tok::RParen)?;
                TermKind::Scroll3(n, h, p, sign)
            }
            "odot" => {
                self.next();
                self.punct(Tok::LParen)?;
                let mut args = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    args.push(self.expr()?);
                }
                self.punct(Tok::RParen)?;
                TermKind::Odot(args)
            }
            "push" => {
                self.next();
                self.punct(Tok::LParen)?;
                let map = self.reference(NameKind::Map)?;
                self.punct(Tok::Comma)?;
                let e = self.expr()?;
                self.punct(Tok::RParen)?;
                TermKind::Push(map, Box::new(e))
            }
            w if KEYWORDS.contains(&w) => return self.error(TERM_START),
            _ => TermKind::Name(self.reference(NameKind::Series)?),
        };
        Ok(Term { kind, span })
    }

    fn vector(&mut self) -> Result<Vec<i64>, DslError> {
        self.punct(Tok::LBracket)?;
        let mut v = vec![self.int()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            v.push(self.int()?);
        }
        self.punct(Tok::RBracket)?;
        Ok(v)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, DslError> {
        self.punct(Tok::LBracket)?;
        let mut rows = vec![self.vector()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            rows.push(self.vector()?);
        }
        self.punct(Tok::RBracket)?;
        Ok(rows)
    }
}
