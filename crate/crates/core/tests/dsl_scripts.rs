//! Parsing and evaluating scripts.

mod common;

use chowseries::catalog::PrintedSign;
use chowseries::dsl::{
    evaluate, parse, run, CommandResult, DslError, Expr, NameKind, Script, Span, Stmt, StmtKind, Term, TermKind,
};
use chowseries::{Error, Multidegree};
use num_bigint::BigInt;
use proptest::prelude::*;

const RULED_CHECK: &str = "\
map Psi = [[1,0,-1],[0,1,1]]
series S = push(Psi, odot(mcdonald(2), gf([1],1), gf([1],1)))
compare ruled_e1(0, 1), S order 10
";

#[test]
fn single_binding_parses() {
    let script = parse("series R = ruled_e1(0, 1)").unwrap();
    assert_eq!(script.statements.len(), 1);
    match &script.statements[0].kind {
        StmtKind::Series { name, expr } => {
            assert_eq!(name, "R");
            assert_eq!(expr.terms.len(), 1);
            assert_eq!(expr.terms[0].kind, TermKind::RuledE1(0, 1));
        }
        other => panic!("unexpected statement {other:?}"),
    }
}

#[test]
fn map_and_push_parse() {
    let text = "map Psi = [[1,0,-1],[0,1,1]]\nseries S = push(Psi, odot(mcdonald(2), gf([1],1), gf([1],1)))";
    let script = parse(text).unwrap();
    assert_eq!(script.statements.len(), 2);
    assert_eq!(
        script.statements[0].kind,
        StmtKind::Map { name: "Psi".into(), rows: vec![vec![1, 0, -1], vec![0, 1, 1]] }
    );
    assert_eq!(script.statements[1].span, Span { line: 2, column: 1 });
}

#[test]
fn wrong_arity_is_a_syntax_error() {
    let err = parse("series R = ruled_e1(0)").unwrap_err();
    match err {
        DslError::Syntax { span, expected, found } => {
            assert_eq!(span, Span { line: 1, column: 22 });
            assert_eq!(expected, vec!["`,`".to_string()]);
            assert_eq!(found, "`)`");
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn name_errors_are_reported_at_parse_time() {
    assert!(matches!(
        parse("series A = one\nseries A = one").unwrap_err(),
        DslError::DuplicateName { span: Span { line: 2, .. }, .. }
    ));
    assert!(matches!(parse("expand B order 3").unwrap_err(), DslError::UnboundName { .. }));
    assert!(matches!(
        parse("series A = one\nexpand push(A, one) order 3").unwrap_err(),
        DslError::WrongKind { expected: NameKind::Map, .. }
    ));
    assert!(matches!(parse("series order = one").unwrap_err(), DslError::Syntax { .. }));
}

#[test]
fn malformed_inputs_are_rejected() {
    for text in [
        "series",
        "series A one",
        "expand one",
        "expand one order",
        "expand one order 3 functional",
        "map M = []",
        "functional L = [1,]",
        "expand gf([1], 1.5) order 2",
        "expand scroll3(1, 1, 2, *) order 2",
        "expand mcdonald(99999999999999999999) order 2",
        "expand one order 3 $",
    ] {
        assert!(matches!(parse(text), Err(DslError::Syntax { .. })), "accepted {text:?}");
    }
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let script = parse("# header\n\n  series A = one # trailing\n# end").unwrap();
    assert_eq!(script.statements.len(), 1);
    assert_eq!(script.statements[0].span, Span { line: 3, column: 3 });
}

#[test]
fn ruled_comparison_has_no_diff() {
    let results = run(RULED_CHECK).unwrap();
    assert_eq!(results.len(), 1);
    match &results[0] {
        CommandResult::Compare { report, .. } => {
            assert!(report.is_equal(), "{:?}", report.diffs);
            assert!(report.uncertified.is_empty());
        }
        other => panic!("expected a comparison, got {other:?}"),
    }
}

#[test]
fn mcdonald_expansion_counts_up() {
    let results = run("expand mcdonald(2) order 3").unwrap();
    let CommandResult::Series { series, .. } = &results[0] else { panic!("expected a series") };
    let got: Vec<BigInt> = (0..=3).map(|d| series.coefficient(&Multidegree::new(vec![d]).unwrap())).collect();
    let expected: Vec<BigInt> = (0..=3).map(|d| common::binom(d + 1, d)).collect();
    assert_eq!(got, expected);
}

#[test]
fn rank_mismatch_is_located_at_the_compare() {
    let err = run("series A = mcdonald(2)\n\ncompare A, ruled_e1(0, 1) order 4").unwrap_err();
    match err {
        DslError::Eval { span, source } => {
            assert_eq!(span, Span { line: 3, column: 1 });
            assert!(matches!(source, Error::RankMismatch { .. }), "{source:?}");
        }
        other => panic!("expected an evaluation error, got {other:?}"),
    }
}

#[test]
fn explicit_functional_is_used() {
    let results = run("functional L = [1, 3]\nexpand ruled_e1(0, 2) order 3 functional L").unwrap();
    let CommandResult::Series { series, .. } = &results[0] else { panic!("expected a series") };
    assert_eq!(series.spec().functional().weights(), &[1, 3]);
    // (0,1) collects t_1 and t_0^2 · t_0^(-2) t_1, the latter with weight 3.
    assert_eq!(series.coefficient(&Multidegree::new(vec![0, 1]).unwrap()), BigInt::from(4));
    // (1,1) has degree 4 and lies outside the region.
    assert!(series.iter().all(|(m, _)| m.components()[0] + 3 * m.components()[1] <= 3));
}

#[test]
fn evaluation_is_deterministic() {
    let render = || format!("{:?}", run(RULED_CHECK).unwrap());
    assert_eq!(render(), render());
}

#[test]
fn independent_commands_commute() {
    let a = "expand mcdonald(3) order 4";
    let b = "expand pn(2, 1) * one order 4";
    let ab = run(&format!("{a}\n{b}")).unwrap();
    let ba = run(&format!("{b}\n{a}")).unwrap();
    assert_eq!(format!("{:?}", ab[0]).replace("line: 1", "L"), format!("{:?}", ba[1]).replace("line: 2", "L"));
}

// Round trip: printing a parsed script and parsing it again gives the same
// tree, up to source positions.

const NOWHERE: Span = Span { line: 0, column: 0 };

fn strip_expr(e: &Expr) -> Expr {
    Expr { terms: e.terms.iter().map(strip_term).collect(), span: NOWHERE }
}

fn strip_term(t: &Term) -> Term {
    let kind = match &t.kind {
        TermKind::Odot(args) => TermKind::Odot(args.iter().map(strip_expr).collect()),
        TermKind::Push(m, e) => TermKind::Push(m.clone(), Box::new(strip_expr(e))),
        other => other.clone(),
    };
    Term { kind, span: NOWHERE }
}

fn strip(s: &Script) -> Script {
    let statements = s
        .statements
        .iter()
        .map(|st| {
            let kind = match &st.kind {
                StmtKind::Series { name, expr } => StmtKind::Series { name: name.clone(), expr: strip_expr(expr) },
                StmtKind::Expand { expr, order, functional } => {
                    StmtKind::Expand { expr: strip_expr(expr), order: *order, functional: functional.clone() }
                }
                StmtKind::Compare { left, right, order, functional } => StmtKind::Compare {
                    left: strip_expr(left),
                    right: strip_expr(right),
                    order: *order,
                    functional: functional.clone(),
                },
                other => other.clone(),
            };
            Stmt { kind, span: NOWHERE }
        })
        .collect();
    Script { statements }
}

fn term(kind: TermKind) -> Term {
    Term { kind, span: NOWHERE }
}

fn int() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=5, any::<i64>()]
}

fn leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        Just(term(TermKind::Name("S".into()))),
        Just(term(TermKind::One)),
        (prop::collection::vec(int(), 1..=3), int()).prop_map(|(m, n)| term(TermKind::Gf(m, n))),
        int().prop_map(|c| term(TermKind::Mcdonald(c))),
        (int(), int()).prop_map(|(n, p)| term(TermKind::Pn(n, p))),
        (int(), int()).prop_map(|(g, e)| term(TermKind::RuledE1(g, e))),
        (int(), int(), int()).prop_map(|(g, e, p)| term(TermKind::Ruled(g, e, p))),
        (int(), int(), int(), any::<bool>()).prop_map(|(n, h, p, plus)| {
            term(TermKind::Scroll3(n, h, p, if plus { PrintedSign::Plus } else { PrintedSign::Minus }))
        }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let term = leaf().prop_recursive(3, 24, 3, |inner| {
        let product = prop::collection::vec(inner, 1..=3).prop_map(|terms| Expr { terms, span: NOWHERE });
        prop_oneof![
            prop::collection::vec(product.clone(), 1..=3).prop_map(|args| term(TermKind::Odot(args))),
            product.prop_map(|e| term(TermKind::Push("M".into(), Box::new(e)))),
        ]
    });
    prop::collection::vec(term, 1..=3).prop_map(|terms| Expr { terms, span: NOWHERE })
}

fn command() -> impl Strategy<Value = StmtKind> {
    let functional = prop::option::of(Just("L".to_string()));
    prop_oneof![
        (expr(), int(), functional.clone()).prop_map(|(expr, order, functional)| StmtKind::Expand {
            expr,
            order,
            functional
        }),
        (expr(), expr(), int(), functional).prop_map(|(left, right, order, functional)| StmtKind::Compare {
            left,
            right,
            order,
            functional
        }),
        expr().prop_map(|expr| StmtKind::Series { name: "T".into(), expr }),
    ]
}

fn script() -> impl Strategy<Value = Script> {
    let prelude = (
        prop::collection::vec(prop::collection::vec(int(), 1..=3), 1..=3),
        prop::collection::vec(int(), 1..=3),
        expr(),
    );
    (prelude, prop::collection::vec(command(), 0..=4)).prop_map(|((rows, weights, s), mut commands)| {
        // Only the first binding of T survives; later ones become expands.
        let mut bound = false;
        for c in &mut commands {
            if let StmtKind::Series { expr, .. } = c {
                if bound {
                    *c = StmtKind::Expand { expr: expr.clone(), order: 0, functional: None };
                }
                bound = true;
            }
        }
        let mut statements = vec![
            StmtKind::Map { name: "M".into(), rows },
            StmtKind::Functional { name: "L".into(), weights },
            StmtKind::Series { name: "S".into(), expr: s_without_self(s) },
        ];
        statements.extend(commands);
        Script { statements: statements.into_iter().map(|kind| Stmt { kind, span: NOWHERE }).collect() }
    })
}

/// `S` cannot mention itself.
fn s_without_self(e: Expr) -> Expr {
    fn fix(t: Term) -> Term {
        let kind = match t.kind {
            TermKind::Name(_) => TermKind::One,
            TermKind::Odot(args) => TermKind::Odot(args.into_iter().map(s_without_self).collect()),
            TermKind::Push(m, e) => TermKind::Push(m, Box::new(s_without_self(*e))),
            other => other,
        };
        term(kind)
    }
    Expr { terms: e.terms.into_iter().map(fix).collect(), span: NOWHERE }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_scripts_reparse_to_the_same_tree(s in script()) {
        let text = s.to_string();
        let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(strip(&parsed), s);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[ -~\\n]{0,80}") {
        let _ = parse(&text);
    }
}

#[test]
fn evaluate_accepts_a_parsed_script_twice() {
    let script = parse(RULED_CHECK).unwrap();
    assert_eq!(evaluate(&script).unwrap().len(), evaluate(&script).unwrap().len());
}
