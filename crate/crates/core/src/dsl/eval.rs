//! Script evaluation.
//!
//! Bindings are evaluated symbolically, to product forms. Commands expand
//! their expressions numerically: products become truncated convolutions and
//! every `push` is a fiber-sum pushforward of its numerically expanded
//! argument. Comparing `push(...)` against a closed form therefore checks the
//! two routes against each other.

use std::collections::HashMap;

use super::ast::{Expr, Script, StmtKind, Term, TermKind};
use super::{DslError, Span};
use crate::catalog::{euler_chow_pn, mcdonald_e0, ruled_series, scroll3_printed_formula, RuledSurfaceSpec};
use crate::error::Error;
use crate::grading::{auto_functional, GradingFunctional, Multidegree, TruncationSpec};
use crate::pushforward::{pullback_weights, push_numeric, push_symbolic, MonoidMap};
use crate::series::{expand, pf_mul, pf_odot, ts_eq, ts_mul, ComparisonReport, ProductForm, TruncatedSeries};

/// Output of one `expand` or `compare` command.
#[derive(Clone, Debug)]
pub enum CommandResult {
    Series { span: Span, series: TruncatedSeries },
    Compare { span: Span, spec: TruncationSpec, report: ComparisonReport },
}

/// A symbolic value; `one` takes whatever rank its context needs.
#[derive(Clone, Debug)]
enum Sym {
    One,
    Form(ProductForm),
}

impl Sym {
    fn at_rank(self, rank: usize) -> ProductForm {
        match self {
            Sym::One => ProductForm::one(rank),
            Sym::Form(f) => f,
        }
    }

    fn rank(&self) -> Option<usize> {
        match self {
            Sym::One => None,
            Sym::Form(f) => Some(f.rank()),
        }
    }
}

fn at(span: Span) -> impl Fn(Error) -> DslError {
    move |source| DslError::Eval { span, source }
}

#[derive(Default)]
struct Env {
    series: HashMap<String, (Expr, Sym)>,
    maps: HashMap<String, MonoidMap>,
    functionals: HashMap<String, GradingFunctional>,
}

pub fn evaluate(script: &Script) -> Result<Vec<CommandResult>, DslError> {
    let mut env = Env::default();
    let mut results = Vec::new();
    for stmt in &script.statements {
        let span = stmt.span;
        match &stmt.kind {
            StmtKind::Series { name, expr } => {
                let sym = env.symbolic(expr)?;
                env.series.insert(name.clone(), (expr.clone(), sym));
            }
            StmtKind::Map { name, rows } => {
                let map = MonoidMap::from_rows(rows.clone()).map_err(at(span))?;
                env.maps.insert(name.clone(), map);
            }
            StmtKind::Functional { name, weights } => {
                let f = GradingFunctional::new(weights.clone()).map_err(at(span))?;
                env.functionals.insert(name.clone(), f);
            }
            StmtKind::Expand { expr, order, functional } => {
                let sym = env.symbolic(expr)?;
                let spec = env.spec(&[(expr, sym)], *order, functional.as_deref(), span)?;
                let series = env.numeric(expr, &spec)?;
                results.push(CommandResult::Series { span, series });
            }
            StmtKind::Compare { left, right, order, functional } => {
                let (ls, rs) = (env.symbolic(left)?, env.symbolic(right)?);
                if let (Some(a), Some(b)) = (ls.rank(), rs.rank()) {
                    if a != b {
                        return Err(DslError::Eval { span, source: Error::RankMismatch { expected: a, found: b } });
                    }
                }
                let spec = env.spec(&[(left, ls), (right, rs)], *order, functional.as_deref(), span)?;
                let l = env.numeric(left, &spec)?;
                let r = env.numeric(right, &spec)?;
                let report = ts_eq(&l, &r).map_err(at(span))?;
                results.push(CommandResult::Compare { span, spec, report });
            }
        }
    }
    Ok(results)
}

impl Env {
    fn symbolic(&self, expr: &Expr) -> Result<Sym, DslError> {
        let mut acc = Sym::One;
        for t in &expr.terms {
            let s = self.symbolic_term(t)?;
            acc = match (acc, s) {
                (Sym::One, s) | (s, Sym::One) => s,
                (Sym::Form(a), Sym::Form(b)) => Sym::Form(pf_mul(&a, &b).map_err(at(t.span))?),
            };
        }
        Ok(acc)
    }

    fn symbolic_term(&self, t: &Term) -> Result<Sym, DslError> {
        let err = at(t.span);
        let form = match &t.kind {
            TermKind::Name(n) => return Ok(self.series[n].1.clone()),
            TermKind::One => return Ok(Sym::One),
            TermKind::Gf(m, n) => {
                ProductForm::from_factors(m.len(), [(Multidegree::new(m.clone()).map_err(&err)?, *n)]).map_err(&err)?
            }
            TermKind::Mcdonald(chi) => mcdonald_e0(*chi),
            TermKind::Pn(n, p) => euler_chow_pn(*n, *p).map_err(&err)?,
            TermKind::RuledE1(g, e) => ruled_series(RuledSurfaceSpec::new(*g, *e).map_err(&err)?, 1).map_err(&err)?,
            TermKind::Ruled(g, e, p) => ruled_series(RuledSurfaceSpec::new(*g, *e).map_err(&err)?, *p).map_err(&err)?,
            TermKind::Scroll3(n, h, p, sign) => scroll3_printed_formula(*n, *h, *p, *sign).map_err(&err)?,
            TermKind::Odot(args) => {
                let mut acc = ProductForm::one(0);
                for a in args {
                    let f = self.symbolic(a)?.at_rank(0);
                    acc = pf_odot(&acc, &f).map_err(at(a.span))?;
                }
                acc
            }
            TermKind::Push(map, e) => {
                let psi = &self.maps[map];
                let f = self.symbolic(e)?.at_rank(psi.domain_rank());
                push_symbolic(psi, &f).map_err(&err)?
            }
        };
        Ok(Sym::Form(form))
    }

    /// Monomials a functional must grade positively for `expr` to be
    /// expanded numerically, in the coordinates of `expr` itself.
    fn grading_constraints(&self, expr: &Expr, out: &mut Vec<Multidegree>) -> Result<(), DslError> {
        for t in &expr.terms {
            match &t.kind {
                TermKind::Name(n) => self.grading_constraints(&self.series[n].0, out)?,
                TermKind::Push(map, inner) => {
                    let psi = &self.maps[map];
                    out.extend(psi.columns());
                    let mut domain = Vec::new();
                    self.grading_constraints(inner, &mut domain)?;
                    for m in domain {
                        out.push(psi.apply(&m).map_err(at(t.span))?);
                    }
                }
                _ => {
                    if let Sym::Form(f) = self.symbolic_term(t)? {
                        out.extend(f.monomials().cloned());
                    }
                }
            }
        }
        Ok(())
    }

    fn spec(
        &self,
        exprs: &[(&Expr, Sym)],
        order: i64,
        functional: Option<&str>,
        span: Span,
    ) -> Result<TruncationSpec, DslError> {
        let functional = match functional {
            Some(name) => self.functionals[name].clone(),
            None => {
                let rank = exprs.iter().find_map(|(_, s)| s.rank()).unwrap_or(0);
                let mut monomials = Vec::new();
                for (e, _) in exprs {
                    self.grading_constraints(e, &mut monomials)?;
                }
                if monomials.is_empty() {
                    GradingFunctional::ones(rank)
                } else {
                    auto_functional(&monomials).map_err(at(span))?
                }
            }
        };
        for (e, s) in exprs {
            if let Some(r) = s.rank() {
                if r != functional.rank() {
                    return Err(DslError::Eval {
                        span: e.span,
                        source: Error::RankMismatch { expected: functional.rank(), found: r },
                    });
                }
            }
        }
        TruncationSpec::new(functional, order).map_err(at(span))
    }

    fn numeric(&self, expr: &Expr, spec: &TruncationSpec) -> Result<TruncatedSeries, DslError> {
        let mut acc: Option<TruncatedSeries> = None;
        for t in &expr.terms {
            let s = self.numeric_term(t, spec)?;
            acc = Some(match acc {
                None => s,
                Some(a) => ts_mul(&a, &s).map_err(at(t.span))?,
            });
        }
        Ok(acc.unwrap_or_else(|| TruncatedSeries::one(spec.clone())))
    }

    fn numeric_term(&self, t: &Term, spec: &TruncationSpec) -> Result<TruncatedSeries, DslError> {
        let err = at(t.span);
        match &t.kind {
            TermKind::Name(n) => self.numeric(&self.series[n].0, spec),
            TermKind::Push(map, inner) => {
                let psi = &self.maps[map];
                let weights = pullback_weights(psi, spec).map_err(&err)?;
                let domain_spec =
                    TruncationSpec::new(GradingFunctional::new(weights).map_err(&err)?, spec.bound()).map_err(&err)?;
                let f = self.numeric(inner, &domain_spec)?;
                push_numeric(psi, &f, spec).map_err(&err)
            }
            _ => {
                let form = self.symbolic_term(t)?.at_rank(spec.rank());
                expand(&form, spec).map_err(&err)
            }
        }
    }
}
